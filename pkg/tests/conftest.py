"""Shared test helpers: tiny dense matrices and random graph generation."""

import numpy as np
import pytest

from fermigraph.graph import SystemGraph

I2 = np.eye(2, dtype=complex)
XM = np.array([[0, 1], [1, 0]], dtype=complex)
YM = np.array([[0, -1j], [1j, 0]], dtype=complex)
ZM = np.array([[1, 0], [0, -1]], dtype=complex)
LETTER_MATS = {"I": I2, "X": XM, "Y": YM, "Z": ZM}


def label_matrix(label: str, n: int) -> np.ndarray:
    """Dense matrix of a 1-based letter label like "X1 Z3", independent of
    the package's symplectic representation."""
    letters = ["I"] * n
    if label.strip() not in ("", "I"):
        for tok in label.split():
            letters[int(tok[1:]) - 1] = tok[0].upper()
    m = np.eye(1, dtype=complex)
    for c in letters:
        m = np.kron(m, LETTER_MATS[c])
    return m


def string_matrix(p) -> np.ndarray:
    """Dense matrix of a PauliString via its textual form."""
    return p.label_coefficient() * label_matrix(p.ops_label(), p.n)


def random_connected_graph(rng, max_vertices=10, max_edges=20) -> SystemGraph:
    """Random connected multigraph with ascending-id ports."""
    n = int(rng.integers(2, max_vertices + 1))
    edges = []
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges.append((u, v))
    extra = int(rng.integers(0, max_edges - n + 2))
    for _ in range(extra):
        a, b = rng.integers(0, n, size=2)
        if a != b and len(edges) < max_edges:
            edges.append((min(int(a), int(b)), max(int(a), int(b))))
    return SystemGraph.from_edges(edges, n_vertices=n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

"""Second-quantized operators and their Majorana / edge-vertex forms.

Modes are 0-based.  Mode m splits into Majorana indices 2m (the "real"
half, gamma-odd in 1-based texts) and 2m+1 (the "imaginary" half):

    a_m      = (g_{2m} + i g_{2m+1}) / 2
    a_m^dag  = (g_{2m} - i g_{2m+1}) / 2
    {g_j, g_k} = 2 delta_jk

Quadratic building blocks:

    A(p,q) = -i g_{2p} g_{2q}     coupling generator between modes p < q
    B(p)   = -i g_{2p} g_{2p+1}   parity of mode p, equal to 1 - 2 n_p

Every parity-preserving operator is a polynomial in these.  The four
quadratic substitution identities, derived from the anticommutation
relations and pinned by a dense oracle in the tests, are

    g_{2p}   g_{2q}    =  i A(p,q)
    g_{2p}   g_{2p+1}  =  i B(p)
    g_{2p}   g_{2q+1}  = -A(p,q) B(q)
    g_{2p+1} g_{2q}    = -A(p,q) B(p)     (= +B(p) A(p,q))
    g_{2p+1} g_{2q+1}  = -i A(p,q) B(p) B(q)

with p < q throughout and edge factors stored before vertex factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, ParityError, ParseError
from .graph import InteractionGraph

Factor = Tuple[int, bool]  # (mode, dagger)


@dataclass(frozen=True)
class FermionOperator:
    """Sum of products of creation/annihilation operators."""

    n_modes: int
    terms: Tuple[Tuple[complex, Tuple[Factor, ...]], ...]

    def __post_init__(self):
        for _, factors in self.terms:
            for mode, _ in factors:
                if not 0 <= mode < self.n_modes:
                    raise DimensionError(
                        f"mode {mode} out of range for n_modes={self.n_modes}"
                    )

    @classmethod
    def from_terms(
        cls, n_modes: int, terms: Iterable[Tuple[complex, Sequence[Factor]]]
    ) -> "FermionOperator":
        return cls(n_modes, tuple((complex(c), tuple(f)) for c, f in terms))

    def is_parity_preserving(self) -> bool:
        return all(len(f) % 2 == 0 for _, f in self.terms)

    def scaled(self, s: complex) -> "FermionOperator":
        return FermionOperator(
            self.n_modes, tuple((c * s, f) for c, f in self.terms)
        )

    def __add__(self, other: "FermionOperator") -> "FermionOperator":
        if other.n_modes != self.n_modes:
            raise DimensionError("mode count mismatch")
        return FermionOperator(self.n_modes, self.terms + other.terms)


@dataclass(frozen=True)
class MajoranaMonomial:
    """coefficient * g_{i1} g_{i2} ... with strictly increasing indices."""

    coefficient: complex
    indices: Tuple[int, ...]

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise ParseError("Majorana indices must be strictly increasing")


@dataclass(frozen=True)
class EVTerm:
    """coefficient * (edge factors in order) * (vertex factors).

    Edge factors are (p, q) mode pairs with p < q; vertex factors are a
    set of modes (their operators commute and square to one)."""

    coefficient: complex
    edge_factors: Tuple[Tuple[int, int], ...]
    vertex_factors: frozenset

    def __post_init__(self):
        for p, q in self.edge_factors:
            if p == q:
                raise ParseError("edge factor endpoints must differ")


# ----------------------------------------------------------------------
# Majorana normal form


def _normal_order(indices: Sequence[int]) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Sort a Majorana index word into strictly increasing order.

    Returns (sign, indices) using g_a g_b = -g_b g_a for a != b and
    g_a g_a = 1."""
    sign = 1
    out: List[int] = []
    for g in indices:
        pos = len(out)
        while pos > 0 and out[pos - 1] > g:
            pos -= 1
        swaps = len(out) - pos
        if swaps % 2:
            sign = -sign
        if pos > 0 and out[pos - 1] == g:
            del out[pos - 1]
        else:
            out.insert(pos, g)
    return sign, tuple(out)


def to_majorana_normal_form(
    f: FermionOperator, tol: float = 1e-12
) -> List[MajoranaMonomial]:
    """Expand into Majorana monomials with strictly increasing indices.

    Like monomials are combined; coefficients below ``tol`` are dropped.
    The result is sorted by (length, indices) for determinism.
    """
    acc: Dict[Tuple[int, ...], complex] = {}
    for coeff, factors in f.terms:
        words: List[Tuple[complex, List[int]]] = [(coeff, [])]
        for mode, dagger in factors:
            nxt: List[Tuple[complex, List[int]]] = []
            sign = -0.5j if dagger else 0.5j
            for c, idx in words:
                nxt.append((c * 0.5, idx + [2 * mode]))
                nxt.append((c * sign, idx + [2 * mode + 1]))
            words = nxt
        for c, idx in words:
            sign, ordered = _normal_order(idx)
            acc[ordered] = acc.get(ordered, 0.0) + sign * c
    out = [
        MajoranaMonomial(c, idx)
        for idx, c in acc.items()
        if abs(c) > tol
    ]
    out.sort(key=lambda m: (len(m.indices), m.indices))
    return out


# ----------------------------------------------------------------------
# edge/vertex decomposition


def pair_to_ev(m: MajoranaMonomial) -> EVTerm:
    """Decompose a quadratic monomial per the substitution identities."""
    if len(m.indices) != 2:
        raise ParseError("pair_to_ev needs a length-2 monomial")
    i1, i2 = m.indices
    p, q = i1 // 2, i2 // 2
    c = m.coefficient
    if p == q:
        return EVTerm(1j * c, (), frozenset({p}))
    odd1, odd2 = i1 % 2 == 0, i2 % 2 == 0
    if odd1 and odd2:
        return EVTerm(1j * c, ((p, q),), frozenset())
    if odd1 and not odd2:
        return EVTerm(-c, ((p, q),), frozenset({q}))
    if not odd1 and odd2:
        return EVTerm(-c, ((p, q),), frozenset({p}))
    return EVTerm(-1j * c, ((p, q),), frozenset({p, q}))


def monomial_to_ev(m: MajoranaMonomial) -> EVTerm:
    """Decompose an even monomial by pairing adjacent sorted indices.

    Pair terms are multiplied left to right; each incoming edge factor is
    commuted past the accumulated vertex factors (sign flip per shared
    mode) so edge factors stay ahead of vertex factors.
    """
    if len(m.indices) % 2:
        raise ParityError("cannot decompose an odd Majorana monomial")
    coeff = m.coefficient
    edges: List[Tuple[int, int]] = []
    verts: frozenset = frozenset()
    for a, b in zip(m.indices[::2], m.indices[1::2]):
        part = pair_to_ev(MajoranaMonomial(1.0, (a, b)))
        coeff *= part.coefficient
        for e in part.edge_factors:
            if len(verts & set(e)) % 2:
                coeff = -coeff
            edges.append(e)
        verts = verts ^ part.vertex_factors
    return EVTerm(coeff, tuple(edges), verts)


def interaction_graph_from_hamiltonian(f: FermionOperator) -> InteractionGraph:
    """One vertex per mode; an edge wherever the edge/vertex decomposition
    of some term requires a coupling generator."""
    if not f.is_parity_preserving():
        raise ParityError("Hamiltonian contains odd-parity terms")
    edges = set()
    for mono in to_majorana_normal_form(f):
        ev = monomial_to_ev(mono)
        edges.update(ev.edge_factors)
    return InteractionGraph(f.n_modes, tuple(sorted(edges)))


# ----------------------------------------------------------------------
# model builders


def syk2_couplings(n_modes: int, seed: int) -> np.ndarray:
    """Gaussian couplings J[j,k] (j < k) over the 2N Majoranas, with
    variance 1/(2N); the lower triangle is zero."""
    rng = np.random.default_rng(seed)
    dim = 2 * n_modes
    j = rng.normal(0.0, 1.0 / np.sqrt(dim), size=(dim, dim))
    return np.triu(j, k=1)


def syk2_monomials(
    n_modes: int,
    couplings: Optional[np.ndarray] = None,
    seed: Optional[int] = None,
) -> List[MajoranaMonomial]:
    """The quadratic Majorana Hamiltonian -i sum_{j<k} J_jk g_j g_k as a
    monomial list."""
    if couplings is None:
        if seed is None:
            raise ParseError("give couplings or a seed")
        couplings = syk2_couplings(n_modes, seed)
    couplings = np.asarray(couplings)
    dim = 2 * n_modes
    if couplings.shape != (dim, dim):
        raise DimensionError(
            f"couplings must be {dim}x{dim}, got {couplings.shape}"
        )
    out = []
    for j in range(dim):
        for k in range(j + 1, dim):
            if couplings[j, k] != 0.0:
                out.append(MajoranaMonomial(-1j * couplings[j, k], (j, k)))
    return out


def build_syk2(
    n_modes: int,
    couplings: Optional[np.ndarray] = None,
    seed: Optional[int] = None,
) -> FermionOperator:
    """Same Hamiltonian as ``syk2_monomials`` but as a FermionOperator,
    via g_{2m} = a_m + a_m^dag and g_{2m+1} = i(a_m^dag - a_m)."""
    monos = syk2_monomials(n_modes, couplings, seed)
    terms: List[Tuple[complex, Tuple[Factor, ...]]] = []
    for m in monos:
        words: List[Tuple[complex, Tuple[Factor, ...]]] = [(m.coefficient, ())]
        for g in m.indices:
            mode, is_imag = g // 2, g % 2 == 1
            nxt = []
            for c, fs in words:
                if is_imag:
                    nxt.append((c * 1j, fs + ((mode, True),)))
                    nxt.append((c * -1j, fs + ((mode, False),)))
                else:
                    nxt.append((c, fs + ((mode, False),)))
                    nxt.append((c, fs + ((mode, True),)))
            words = nxt
        terms.extend(words)
    return FermionOperator.from_terms(n_modes, terms)


def build_lattice_model(
    kind: str,
    dims,
    t: float = 1.0,
    t_diag: float = 0.0,
    u: float = 0.0,
    bc: str = "open",
) -> FermionOperator:
    """Hopping plus onsite-potential Hamiltonians on small lattices.

    Kinds: ``chain``, ``square_nn``, ``square_nn_diag`` (adds t_diag
    hopping across both square diagonals).  Each bond (j, k) contributes
    t (a_j^dag a_k + a_k^dag a_j); each site contributes u a_j^dag a_j.
    """
    if bc not in ("open", "periodic"):
        raise ParseError(f"unknown boundary {bc!r}")
    periodic = bc == "periodic"

    bonds: List[Tuple[int, int, float]] = []
    if kind == "chain":
        n = dims if isinstance(dims, int) else tuple(dims)[0]
        if n < 2:
            raise ParseError("chain needs at least 2 modes")
        for j in range(n - 1):
            bonds.append((j, j + 1, t))
        if periodic:
            bonds.append((0, n - 1, t))
    elif kind in ("square_nn", "square_nn_diag"):
        if isinstance(dims, int):
            rows = cols = dims
        else:
            rows, cols = tuple(dims)
        n = rows * cols
        if n < 2:
            raise ParseError("lattice needs at least 2 modes")

        def vid(r, c):
            return r * cols + c

        offsets = [(0, 1), (1, 0)]
        if kind == "square_nn_diag":
            offsets += [(1, 1), (1, -1)]
        for r in range(rows):
            for c in range(cols):
                for dr, dc in offsets:
                    rr, cc = r + dr, c + dc
                    if periodic:
                        rr, cc = rr % rows, cc % cols
                    elif not (0 <= rr < rows and 0 <= cc < cols):
                        continue
                    amp = t_diag if (dr, dc) in ((1, 1), (1, -1)) else t
                    if amp != 0.0:
                        bonds.append((vid(r, c), vid(rr, cc), amp))
    else:
        raise ParseError(f"unknown lattice model {kind!r}")

    terms: List[Tuple[complex, Tuple[Factor, ...]]] = []
    for j, k, amp in bonds:
        if amp == 0.0:
            continue
        terms.append((amp, ((j, True), (k, False))))
        terms.append((amp, ((k, True), (j, False))))
    if u != 0.0:
        for j in range(n):
            terms.append((u, ((j, True), (j, False))))
    return FermionOperator.from_terms(n, terms)

"""Local Majorana bases: anticommuting Pauli sets on a vertex's qubits.

A vertex of degree d owns n = ceil(d/2) qubits and carries 2n Pauli
operators that square to +1, pairwise anticommute, and generate the full
Pauli group on those qubits.  The first d operators are assigned to the
vertex's ports in order; when d is odd the final operator is the vertex's
unpaired Majorana.

Three constructions are provided:

``jw``        the chain pattern X1, Y1, Z1 X2, Z1 Y2, ...; weight grows
              linearly with the qubit index.
``jw_yx``     same strings with each (X, Y) pair swapped, so the first
              operator on each qubit is the Y-type one.  This is the
              variant that makes encoded chain vertex operators come out
              as +Z.
``fenwick``   binary-indexed-tree strings with weight at most
              floor(log2 n) + 1.
``ternary``   root-to-leaf strings of a balanced ternary tree with weight
              at most ceil(log3(2n + 1)); the discarded (2n+1)-th string
              is the all-Z descent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence, Tuple

from .errors import ParseError, VerifyError
from .pauli import PauliString


@dataclass(frozen=True)
class MajoranaBasis:
    degree: int
    n_qubits: int
    ops: Tuple[PauliString, ...]
    name: str = "custom"

    def port_ops(self) -> Tuple[PauliString, ...]:
        return self.ops[: self.degree]

    def unpaired_op(self) -> PauliString:
        if self.degree % 2 == 0:
            raise VerifyError(f"degree {self.degree} vertex has no unpaired Majorana")
        return self.ops[self.degree]


@dataclass
class BasisReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _check_degree(d: int) -> int:
    if d < 1:
        raise ParseError(f"degree must be >= 1, got {d}")
    return (d + 1) // 2


def basis_jw(d: int) -> MajoranaBasis:
    """Chain-pattern basis: op 2m-1 = Z...Z X_m, op 2m = Z...Z Y_m."""
    n = _check_degree(d)
    ops = []
    for m in range(n):
        prefix = (1 << m) - 1
        ops.append(PauliString(n, 1 << m, prefix, 0))
        ops.append(PauliString(n, 1 << m, prefix | (1 << m), 1))
    return MajoranaBasis(d, n, tuple(ops), "jw")


def basis_jw_yx(d: int) -> MajoranaBasis:
    """Chain pattern with Y before X in every pair (op 2m-1 = Z...Z Y_m)."""
    n = _check_degree(d)
    ops = []
    for m in range(n):
        prefix = (1 << m) - 1
        ops.append(PauliString(n, 1 << m, prefix | (1 << m), 1))
        ops.append(PauliString(n, 1 << m, prefix, 0))
    return MajoranaBasis(d, n, tuple(ops), "jw_yx")


# ----------------------------------------------------------------------
# binary-indexed-tree construction


def _bit_sets(n: int) -> List[Tuple[List[int], List[int], List[int]]]:
    """(update, parity, remainder) qubit sets per mode for a binary indexed
    tree over n positions.  1-based tree nodes are mapped to 0-based qubits.
    """
    out = []
    for m in range(n):
        node = m + 1
        update = []
        j = node + (node & -node)
        while j <= n:
            update.append(j - 1)
            j += j & -j
        parity = []
        j = m
        while j > 0:
            parity.append(j - 1)
            j -= j & -j
        children = []
        low = node & -node
        step = 1
        while step < low:
            children.append(node - step - 1)
            step <<= 1
        remainder = [q for q in parity if q not in children]
        out.append((update, parity, remainder))
    return out


def basis_fenwick(d: int) -> MajoranaBasis:
    """Tree-structured strings with weight at most floor(log2 n) + 1.

    Mode m maps to the pair X_U X_m Z_P and X_U Y_m Z_R, where U is the
    tree ancestor set, P the prefix-parity set, and R = P minus m's
    children.
    """
    n = _check_degree(d)
    ops = []
    for m, (update, parity, remainder) in enumerate(_bit_sets(n)):
        ux = 0
        for q in update:
            ux |= 1 << q
        pz = 0
        for q in parity:
            pz |= 1 << q
        rz = 0
        for q in remainder:
            rz |= 1 << q
        ops.append(PauliString(n, ux | (1 << m), pz, 0))
        ops.append(PauliString(n, ux | (1 << m), rz | (1 << m), 1))
    return MajoranaBasis(d, n, tuple(ops), "fenwick")


# ----------------------------------------------------------------------
# ternary tree construction


def _ternary_strings(n: int) -> List[PauliString]:
    """All 2n+1 root-to-slot strings of the balanced ternary tree on n
    qubits (node i has children 3i+1, 3i+2, 3i+3), in depth-first order
    with branches visited X, Y, Z."""
    letters = ("X", "Y", "Z")
    out: List[PauliString] = []

    def visit(node: int, prefix: Dict[int, str]) -> None:
        for b, letter in enumerate(letters):
            child = 3 * node + 1 + b
            ops = dict(prefix)
            ops[node] = letter
            if child < n:
                visit(child, ops)
            else:
                out.append(PauliString.from_ops(n, ops))

    visit(0, {})
    return out


def basis_ternary_tree(d: int) -> MajoranaBasis:
    """Balanced ternary-tree strings; weight at most ceil(log3(2n + 1)).

    Of the 2n+1 pairwise-anticommuting strings, the all-Z descent (the last
    in depth-first order) is discarded.
    """
    n = _check_degree(d)
    strings = _ternary_strings(n)
    return MajoranaBasis(d, n, tuple(strings[:-1]), "ternary")


def basis_from_labels(d: int, labels: Sequence[str]) -> MajoranaBasis:
    """Explicit per-vertex basis from textual labels; caller should verify."""
    n = _check_degree(d)
    if len(labels) != 2 * n:
        raise ParseError(f"need {2 * n} operators for degree {d}, got {len(labels)}")
    ops = tuple(PauliString.from_label(lbl, n) for lbl in labels)
    return MajoranaBasis(d, n, ops, "custom")


BASIS_BUILDERS: Dict[str, Callable[[int], MajoranaBasis]] = {
    "jw": basis_jw,
    "jw_yx": basis_jw_yx,
    "fenwick": basis_fenwick,
    "ternary": basis_ternary_tree,
}


def get_basis(name: str, d: int) -> MajoranaBasis:
    try:
        builder = BASIS_BUILDERS[name]
    except KeyError:
        raise ParseError(f"unknown basis {name!r}") from None
    return builder(d)


# ----------------------------------------------------------------------
# validation


def _gf2_rank(rows: List[int]) -> int:
    rank = 0
    pivots: List[int] = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


def basis_verify(b: MajoranaBasis) -> BasisReport:
    """Check Hermiticity, squaring to +I, pairwise anticommutation, and
    full symplectic rank.  An empty report means the basis is valid."""
    report = BasisReport()
    n = b.n_qubits
    if len(b.ops) != 2 * n:
        report.violations.append(
            f"expected {2 * n} operators on {n} qubits, got {len(b.ops)}"
        )
    for i, op in enumerate(b.ops):
        if op.n != n:
            report.violations.append(f"op {i} acts on {op.n} qubits, expected {n}")
            return report
        if not op.is_hermitian():
            report.violations.append(f"op {i} is not Hermitian")
        sq = op * op
        if sq.phase != 0:
            report.violations.append(f"op {i} squares to -I")
    for i in range(len(b.ops)):
        for j in range(i + 1, len(b.ops)):
            if b.ops[i].commutes(b.ops[j]):
                report.violations.append(f"ops {i} and {j} commute")
    rows = [op.x | (op.z << n) for op in b.ops]
    rank = _gf2_rank(rows)
    if rank != 2 * n:
        report.violations.append(
            f"symplectic rank {rank} < {2 * n}: operators do not generate the Pauli group"
        )
    return report

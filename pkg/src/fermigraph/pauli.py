"""Phase-exact Pauli operator algebra in symplectic (x, z) form.

An n-qubit Pauli operator is stored as a pair of length-n bit vectors
(packed into Python integers) together with an integer phase exponent:

    P = i^phase * prod_q X_q^{x_q} Z_q^{z_q}

Bit q of ``x`` (``z``) is set when the operator acts with X (Z) on qubit q.
The single-qubit cases are

    (x_q, z_q) = (0,0) -> I,  (1,0) -> X,  (0,1) -> Z,  (1,1) -> XZ = -iY

so the standard Hermitian Y on qubit q is stored as x_q = z_q = 1 with a
phase factor of i.  The phase is tracked exactly as an integer mod 4; no
floating point enters the group algebra.  Multiplication follows from
Z^a X^b = (-1)^{ab} X^b Z^a applied qubit-wise:

    A * B = i^{pa+pb} (-1)^{|z_A & x_B|} X^{x_A^x_B} Z^{z_A^z_B}

A Pauli string is Hermitian exactly when phase = |x & z| (mod 2), where
|x & z| counts qubits carrying both an X and a Z factor.

Qubit indices are 0-based internally.  Textual labels ("X1 Z2 Y3") are
1-based and use the Hermitian letters I, X, Y, Z; the phase implied by Y
letters is folded in and out during parsing/printing so that a printed
coefficient multiplies the ordinary Hermitian Pauli product.

``PauliString`` and ``PauliSum`` are immutable values; all operations are
pure functions, so instances may be shared freely across workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Tuple

from .errors import DimensionError, ParseError

#: Coefficients with magnitude below this are dropped from sums.
ZERO_THRESHOLD = 1e-12

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}

_TERM_RE = re.compile(r"^\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)\s*(.*)$")


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True)
class PauliString:
    """A single phase-tracked Pauli operator on ``n`` qubits."""

    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DimensionError("negative qubit count")
        mask = (1 << self.n) - 1
        if (self.x & ~mask) or (self.z & ~mask):
            raise DimensionError("bit vector exceeds qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        """The Hermitian operator ``letter`` on one qubit (0-based)."""
        if not 0 <= qubit < n:
            raise DimensionError(f"qubit {qubit} out of range for n={n}")
        xb, zb = _LETTER_BITS[letter.upper()]
        phase = 1 if letter.upper() == "Y" else 0
        return cls(n, xb << qubit, zb << qubit, phase)

    @classmethod
    def from_ops(cls, n: int, ops: Dict[int, str]) -> "PauliString":
        """Build from a map of 0-based qubit -> letter in I, X, Y, Z."""
        x = z = 0
        phase = 0
        for q, letter in ops.items():
            if not 0 <= q < n:
                raise DimensionError(f"qubit {q} out of range for n={n}")
            xb, zb = _LETTER_BITS[letter.upper()]
            if (x >> q) & 1 or (z >> q) & 1:
                raise ParseError(f"duplicate qubit {q} in operator map")
            x |= xb << q
            z |= zb << q
            if letter.upper() == "Y":
                phase += 1
        return cls(n, x, z, phase)

    @classmethod
    def from_label(cls, label: str, n: int) -> "PauliString":
        """Parse a 1-based textual label such as ``"X1 Z2 Y3"`` or ``"I"``."""
        label = label.strip()
        if label in ("", "I"):
            return cls.identity(n)
        ops: Dict[int, str] = {}
        for token in label.split():
            m = re.fullmatch(r"([IXYZixyz])(\d+)", token)
            if not m:
                raise ParseError(f"bad Pauli token {token!r}")
            letter, idx = m.group(1).upper(), int(m.group(2))
            if idx < 1:
                raise ParseError(f"qubit index {idx} must be 1-based")
            if letter == "I":
                continue
            ops[idx - 1] = letter
        return cls.from_ops(n, ops)

    # ------------------------------------------------------------------
    # algebra

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise DimensionError(
                f"cannot multiply operators on {self.n} and {other.n} qubits"
            )
        phase = self.phase + other.phase + 2 * _popcount(self.z & other.x)
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z, phase)

    def commutes(self, other: "PauliString") -> bool:
        """True iff the symplectic inner product vanishes mod 2."""
        if self.n != other.n:
            raise DimensionError(
                f"cannot compare operators on {self.n} and {other.n} qubits"
            )
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    def weight(self) -> int:
        """Number of qubits acted on nontrivially."""
        return _popcount(self.x | self.z)

    def is_hermitian(self) -> bool:
        return self.phase % 2 == _popcount(self.x & self.z) % 2

    def adjoint(self) -> "PauliString":
        return PauliString(
            self.n, self.x, self.z, -self.phase + 2 * _popcount(self.x & self.z)
        )

    def with_phase(self, k: int) -> "PauliString":
        """Multiply by the global phase i^k."""
        return PauliString(self.n, self.x, self.z, self.phase + k)

    def __neg__(self) -> "PauliString":
        return self.with_phase(2)

    # ------------------------------------------------------------------
    # structure helpers

    def support(self) -> List[int]:
        bits = self.x | self.z
        return [q for q in range(self.n) if (bits >> q) & 1]

    def letter(self, qubit: int) -> str:
        return _BITS_LETTER[((self.x >> qubit) & 1, (self.z >> qubit) & 1)]

    def embed(self, n_total: int, offset: int) -> "PauliString":
        """Place this operator into a larger register starting at ``offset``."""
        if offset < 0 or offset + self.n > n_total:
            raise DimensionError("embedding range out of bounds")
        return PauliString(n_total, self.x << offset, self.z << offset, self.phase)

    def key(self) -> Tuple[int, int]:
        """Canonical (x, z) key with the phase stripped."""
        return (self.x, self.z)

    # ------------------------------------------------------------------
    # text

    def label_coefficient(self) -> complex:
        """Coefficient c such that self == c * (Hermitian letter product).

        The letter product treats every (1,1) qubit as the standard Y, so
        c = i^(phase - |x & z|); it is +1 or -1 for Hermitian strings.
        """
        k = (self.phase - _popcount(self.x & self.z)) % 4
        return (1, 1j, -1, -1j)[k]

    def ops_label(self) -> str:
        """The 1-based letter part of the label, e.g. ``"X1 Z2"`` or ``"I"``."""
        parts = [f"{self.letter(q)}{q + 1}" for q in self.support()]
        return " ".join(parts) if parts else "I"

    def __str__(self) -> str:
        c = self.label_coefficient()
        return f"({_fmt_float(c.real)},{_fmt_float(c.imag)}) {self.ops_label()}"

    def __repr__(self) -> str:
        return f"PauliString({self})"


def pauli_multiply(a: PauliString, b: PauliString) -> PauliString:
    """Exact product a*b; associative, with the phase tracked mod 4."""
    return a * b


def pauli_commutes(a: PauliString, b: PauliString) -> bool:
    return a.commutes(b)


def pauli_weight(a: PauliString) -> int:
    return a.weight()


def pauli_is_hermitian(a: PauliString) -> bool:
    return a.is_hermitian()


def _fmt_float(v: float) -> str:
    if v == 0:
        v = 0.0  # normalize -0.0
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _parse_number(tok: str) -> float:
    try:
        return float(tok)
    except ValueError as exc:
        raise ParseError(f"bad coefficient component {tok!r}") from exc


class PauliSum:
    """A complex-weighted sum of Pauli strings on a fixed register.

    Terms are keyed by the canonical (x, z) pair; the phase of any string
    accumulated into the sum is folded into its coefficient.  Coefficients
    of magnitude below ``ZERO_THRESHOLD`` are dropped.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Dict[Tuple[int, int], complex] | None = None):
        self.n = n
        self._terms: Dict[Tuple[int, int], complex] = {}
        if terms:
            for key, c in terms.items():
                if abs(c) >= ZERO_THRESHOLD:
                    self._terms[key] = c

    # ------------------------------------------------------------------

    def accumulate(self, coeff: complex, p: PauliString) -> "PauliSum":
        """Return a new sum with coeff * p added."""
        if p.n != self.n:
            raise DimensionError(
                f"cannot accumulate a {p.n}-qubit term into a {self.n}-qubit sum"
            )
        out = PauliSum(self.n)
        out._terms = dict(self._terms)
        _acc(out._terms, coeff, p)
        return out

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, p: PauliString) -> complex:
        """Coefficient of p's canonical form (p's own phase folded in)."""
        c = self._terms.get(p.key(), 0.0)
        return c * (1, -1j, -1, 1j)[p.phase % 4] if c else 0.0

    def terms(self) -> Iterator[Tuple[PauliString, complex]]:
        """Iterate (canonical string with phase 0, coefficient), sorted."""
        for key in sorted(self._terms):
            yield PauliString(self.n, key[0], key[1], 0), self._terms[key]

    def labeled_terms(self) -> Iterator[Tuple[str, complex]]:
        """Iterate (letter label, coefficient of the Hermitian letter product)."""
        for p, c in self.terms():
            # prod X^x Z^z = (-i)^y * (letter product with Y's), y = |x & z|
            y = _popcount(p.x & p.z) % 4
            yield p.ops_label(), c * (1, -1j, -1, 1j)[y]

    def is_real(self, tol: float = ZERO_THRESHOLD) -> bool:
        """True when every labeled coefficient is real within tol."""
        return all(abs(c.imag) <= tol for _, c in self.labeled_terms())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliSum) or other.n != self.n:
            return NotImplemented
        keys = set(self._terms) | set(other._terms)
        return all(
            abs(self._terms.get(k, 0.0) - other._terms.get(k, 0.0)) <= ZERO_THRESHOLD
            for k in keys
        )

    def __str__(self) -> str:
        lines = []
        for label, c in self.labeled_terms():
            lines.append(f"({_fmt_float(c.real)},{_fmt_float(c.imag)}) {label}")
        return "\n".join(lines)


class PauliSumBuilder:
    """Mutable accumulator used internally to assemble large sums."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int):
        self.n = n
        self._terms: Dict[Tuple[int, int], complex] = {}

    def add(self, coeff: complex, p: PauliString) -> None:
        if p.n != self.n:
            raise DimensionError(
                f"cannot accumulate a {p.n}-qubit term into a {self.n}-qubit sum"
            )
        _acc(self._terms, coeff, p)

    def build(self) -> PauliSum:
        out = PauliSum(self.n)
        out._terms = {
            k: c for k, c in self._terms.items() if abs(c) >= ZERO_THRESHOLD
        }
        return out


def _acc(terms: Dict[Tuple[int, int], complex], coeff: complex, p: PauliString) -> None:
    c = coeff * (1, 1j, -1, -1j)[p.phase % 4]
    key = p.key()
    new = terms.get(key, 0.0) + c
    if abs(new) < ZERO_THRESHOLD:
        terms.pop(key, None)
    else:
        terms[key] = new


def sum_accumulate(s: PauliSum, coeff: complex, p: PauliString) -> PauliSum:
    """Pure accumulate: coefficient of p's canonical form grows by c*i^phase."""
    return s.accumulate(coeff, p)


# ----------------------------------------------------------------------
# textual term formats (.pauli files)


def format_term(coeff: complex, label: str) -> str:
    return f"({_fmt_float(coeff.real)},{_fmt_float(coeff.imag)}) {label}"


def parse_term(line: str) -> Tuple[complex, str]:
    """Parse ``(re,im) <ops>`` into (coefficient, ops label)."""
    m = _TERM_RE.match(line.strip())
    if not m:
        raise ParseError(f"bad term line {line!r}")
    re_part, im_part, label = m.groups()
    return complex(_parse_number(re_part), _parse_number(im_part)), label.strip()


def pauli_sum_to_lines(s: PauliSum) -> List[str]:
    lines = [f"qubits {s.n}"]
    lines.extend(format_term(c, label) for label, c in s.labeled_terms())
    return lines


def pauli_sum_from_lines(lines: Iterable[str]) -> PauliSum:
    n = None
    builder = None
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            m = re.fullmatch(r"qubits\s+(\d+)", line)
            if not m:
                raise ParseError("pauli sum file must start with 'qubits <n>'")
            n = int(m.group(1))
            builder = PauliSumBuilder(n)
            continue
        coeff, label = parse_term(line)
        builder.add(coeff, PauliString.from_label(label, n))
    if builder is None:
        raise ParseError("empty pauli sum file")
    return builder.build()

"""Compile fermionic operators into Pauli sums over an encoding.

Each Hamiltonian term runs through the pipeline

    second-quantized -> Majorana normal form -> edge/vertex term -> Paulis

with every edge factor realized either by the stored edge operator (when
the two modes share a system-graph edge) or by a canonical routed string,
and every vertex factor by the encoded vertex operator.
"""

from __future__ import annotations

from typing import Dict, Iterable, Sequence, Tuple, Union

from .encoding import Encoding
from .errors import ParityError, ParseError, RoutingError
from .fermion import (
    EVTerm,
    FermionOperator,
    MajoranaMonomial,
    monomial_to_ev,
    to_majorana_normal_form,
)
from .pauli import PauliString, PauliSum, PauliSumBuilder

#: route="auto" uses min-weight routing; an explicit dict maps (j, k) mode
#: pairs to vertex paths.
Routing = Union[str, Dict[Tuple[int, int], Sequence[int]]]


class _Realizer:
    """Caches the Pauli image of each coupling generator and parity."""

    def __init__(self, enc: Encoding, route: Routing = "auto"):
        self.enc = enc
        self.route = route
        self._coupling: Dict[Tuple[int, int], PauliString] = {}
        self._parity: Dict[int, PauliString] = {}

    def coupling(self, p: int, q: int) -> PauliString:
        key = (p, q)
        if key not in self._coupling:
            enc = self.enc
            vp, vq = enc.mode_vertex(p), enc.mode_vertex(q)
            if enc.graph.edges_between(vp, vq):
                op = enc.edge_operator(vp, vq)
            elif isinstance(self.route, dict):
                if key not in self.route:
                    raise RoutingError(f"no explicit path given for modes {key}")
                path = list(self.route[key])
                if path and path[0] == vq and path[-1] == vp:
                    # reversed orientation; the coupling is antisymmetric
                    op = -enc.path_edge_operator(vq, vp, path=path)
                else:
                    op = enc.path_edge_operator(vp, vq, path=path)
            elif self.route == "auto":
                op = enc.path_edge_operator(vp, vq)
            else:
                raise ParseError(f"unknown routing policy {self.route!r}")
            self._coupling[key] = op
        return self._coupling[key]

    def parity(self, p: int) -> PauliString:
        if p not in self._parity:
            enc = self.enc
            v = enc.mode_vertex(p)
            op = enc.vertex_operator(v)
            if op.weight() == 0:
                raise RoutingError(
                    f"mode {p} sits on a degree-0 vertex and has no parity operator"
                )
            self._parity[p] = op
        return self._parity[p]

    def ev(self, term: EVTerm) -> PauliString:
        op = PauliString.identity(self.enc.total_qubits)
        for p, q in term.edge_factors:
            op = op * self.coupling(p, q)
        for p in sorted(term.vertex_factors):
            op = op * self.parity(p)
        return op


def transform_monomials(
    monomials: Iterable[MajoranaMonomial],
    enc: Encoding,
    route: Routing = "auto",
) -> PauliSum:
    """Compile a list of Majorana monomials (must all be even)."""
    realizer = _Realizer(enc, route)
    builder = PauliSumBuilder(enc.total_qubits)
    for mono in monomials:
        ev = monomial_to_ev(mono)
        builder.add(ev.coefficient, realizer.ev(ev))
    return builder.build()


def transform_hamiltonian(
    f: FermionOperator,
    enc: Encoding,
    route: Routing = "auto",
) -> PauliSum:
    """Compile a parity-preserving fermionic operator into a Pauli sum.

    Raises a parity error on odd terms and a routing error when a
    required coupling cannot be realized on the encoding's graph.
    """
    if not f.is_parity_preserving():
        raise ParityError("Hamiltonian contains odd-parity terms")
    if f.n_modes != enc.n_modes:
        raise ParseError(
            f"operator has {f.n_modes} modes but the encoding hosts {enc.n_modes}"
        )
    return transform_monomials(to_majorana_normal_form(f), enc, route)

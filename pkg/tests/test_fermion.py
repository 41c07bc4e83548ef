"""Tests for the second-quantized front end and its dense oracles."""

import itertools

import numpy as np
import pytest

from fermigraph.dense import (
    ev_term_matrix,
    fermion_operator_matrix,
    majorana_matrix,
    monomial_matrix,
    parity_matrix,
)
from fermigraph.errors import ParityError
from fermigraph.fermion import (
    FermionOperator,
    MajoranaMonomial,
    build_lattice_model,
    build_syk2,
    interaction_graph_from_hamiltonian,
    monomial_to_ev,
    pair_to_ev,
    syk2_couplings,
    syk2_monomials,
    to_majorana_normal_form,
)


def dense_of_monomials(n, monomials):
    out = np.zeros((2**n, 2**n), dtype=complex)
    for m in monomials:
        out += monomial_matrix(n, m)
    return out


class TestMajoranaReference:
    def test_anticommutation(self):
        n = 3
        for i in range(2 * n):
            for j in range(2 * n):
                gi, gj = majorana_matrix(n, i), majorana_matrix(n, j)
                anti = gi @ gj + gj @ gi
                expect = 2 * np.eye(2**n) if i == j else np.zeros((2**n,) * 2)
                assert np.allclose(anti, expect)

    def test_parity_is_one_minus_two_n(self):
        n = 2
        for p in range(n):
            num = fermion_operator_matrix(
                FermionOperator.from_terms(n, [(1.0, ((p, True), (p, False)))])
            )
            assert np.allclose(parity_matrix(n, p), np.eye(4) - 2 * num)


class TestNormalForm:
    def test_number_operator(self):
        """a'a = 1/2 + (i/2) g0 g1 = (1 - B)/2 since g0 g1 = i B."""
        f = FermionOperator.from_terms(1, [(1.0, ((0, True), (0, False)))])
        monos = to_majorana_normal_form(f)
        assert {m.indices: m.coefficient for m in monos} == {
            (): pytest.approx(0.5),
            (0, 1): pytest.approx(0.5j),
        }
        num = fermion_operator_matrix(f)
        assert np.allclose(num, (np.eye(2) - parity_matrix(1, 0)) / 2)

    def test_nilpotency(self):
        f = FermionOperator.from_terms(1, [(1.0, ((0, False), (0, False)))])
        assert to_majorana_normal_form(f) == []

    def test_hopping_monomials(self):
        f = FermionOperator.from_terms(
            2, [(1.0, ((0, True), (1, False))), (1.0, ((1, True), (0, False)))]
        )
        monos = {m.indices: m.coefficient for m in to_majorana_normal_form(f)}
        assert monos == {
            (0, 3): pytest.approx(0.5j),
            (1, 2): pytest.approx(-0.5j),
        }

    def test_matches_dense_oracle(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 4))
            terms = []
            for _ in range(int(rng.integers(1, 5))):
                length = int(rng.integers(0, 5))
                fs = tuple(
                    (int(rng.integers(0, n)), bool(rng.integers(0, 2)))
                    for _ in range(length)
                )
                terms.append((complex(rng.normal(), rng.normal()), fs))
            f = FermionOperator.from_terms(n, terms)
            lhs = fermion_operator_matrix(f)
            rhs = dense_of_monomials(n, to_majorana_normal_form(f))
            assert np.allclose(lhs, rhs, atol=1e-10)


class TestPairToEV:
    def test_odd_odd(self):
        ev = pair_to_ev(MajoranaMonomial(1.0, (0, 2)))
        assert ev.coefficient == 1j
        assert ev.edge_factors == ((0, 1),) and not ev.vertex_factors

    def test_same_mode(self):
        ev = pair_to_ev(MajoranaMonomial(1.0, (0, 1)))
        assert ev.coefficient == 1j
        assert not ev.edge_factors and ev.vertex_factors == {0}

    def test_even_even_sign_fixed_by_oracle(self):
        mono = MajoranaMonomial(1.0, (1, 3))
        ev = pair_to_ev(mono)
        assert ev.coefficient == -1j
        assert np.allclose(monomial_matrix(2, mono), ev_term_matrix(2, ev))

    @pytest.mark.parametrize("pair", list(itertools.combinations(range(6), 2)))
    def test_all_pairs_against_dense(self, pair):
        mono = MajoranaMonomial(0.7 - 0.2j, pair)
        ev = pair_to_ev(mono)
        assert np.allclose(monomial_matrix(3, mono), ev_term_matrix(3, ev))


class TestMonomialToEV:
    def test_quadratic_delegates(self):
        mono = MajoranaMonomial(2.0, (0, 3))
        assert monomial_to_ev(mono) == pair_to_ev(mono)

    def test_double_parity(self):
        """g1 g2 g3 g4 over two modes composes to -B(0) B(1)."""
        ev = monomial_to_ev(MajoranaMonomial(1.0, (0, 1, 2, 3)))
        assert ev.coefficient == pytest.approx(-1)
        assert not ev.edge_factors and ev.vertex_factors == {0, 1}

    def test_odd_length_rejected(self):
        with pytest.raises(ParityError):
            monomial_to_ev(MajoranaMonomial(1.0, (0, 1, 2)))

    def test_quartics_against_dense(self, rng):
        n = 3
        for combo in itertools.combinations(range(2 * n), 4):
            mono = MajoranaMonomial(complex(rng.normal(), rng.normal()), combo)
            ev = monomial_to_ev(mono)
            assert len(ev.edge_factors) <= 2
            assert np.allclose(monomial_matrix(n, mono), ev_term_matrix(n, ev))

    def test_sextic_against_dense(self):
        mono = MajoranaMonomial(1.5, (0, 1, 2, 4, 5, 7))
        ev = monomial_to_ev(mono)
        assert np.allclose(monomial_matrix(4, mono), ev_term_matrix(4, ev))


class TestInteractionGraph:
    def test_pbc_chain_is_cycle(self):
        f = build_lattice_model("chain", 5, t=1.0, u=0.5, bc="periodic")
        ig = interaction_graph_from_hamiltonian(f)
        assert ig.edges == ((0, 1), (0, 4), (1, 2), (2, 3), (3, 4))

    def test_onsite_only_has_no_edges(self):
        f = build_lattice_model("chain", 4, t=0.0, u=1.0)
        ig = interaction_graph_from_hamiltonian(f)
        assert ig.edges == ()

    def test_syk2_is_complete(self):
        f = build_syk2(4, seed=3)
        ig = interaction_graph_from_hamiltonian(f)
        assert ig.edges == tuple(
            (i, j) for i in range(4) for j in range(i + 1, 4)
        )

    def test_parity_violation(self):
        f = FermionOperator.from_terms(2, [(1.0, ((0, True),))])
        with pytest.raises(ParityError):
            interaction_graph_from_hamiltonian(f)


class TestBuilders:
    def test_syk2_single_coupling(self):
        """-i J g0 g1 with J = 1 is the parity 1 - 2n, fixed by the
        2-dim oracle."""
        j = np.zeros((2, 2))
        j[0, 1] = 1.0
        f = build_syk2(1, couplings=j)
        m = fermion_operator_matrix(f)
        num = fermion_operator_matrix(
            FermionOperator.from_terms(1, [(1.0, ((0, True), (0, False)))])
        )
        assert np.allclose(m, parity_matrix(1, 0))
        assert np.allclose(m, np.eye(2) - 2 * num)

    def test_syk2_zero(self):
        f = build_syk2(2, couplings=np.zeros((4, 4)))
        assert to_majorana_normal_form(f) == []

    def test_syk2_monomial_count(self):
        monos = syk2_monomials(8, seed=11)
        assert len(monos) == 120  # C(16, 2)

    def test_build_matches_monomials(self):
        """The operator route and the direct monomial route agree."""
        j = syk2_couplings(3, seed=5)
        f = build_syk2(3, couplings=j)
        lhs = fermion_operator_matrix(f)
        rhs = dense_of_monomials(3, syk2_monomials(3, couplings=j))
        assert np.allclose(lhs, rhs, atol=1e-12)

    def test_chain_term_count(self):
        f = build_lattice_model("chain", 4, t=1.0, u=0.5, bc="periodic")
        hop = [t for t in f.terms if len(t[1]) == 2 and t[1][0][0] != t[1][1][0]]
        onsite = [t for t in f.terms if t[1][0][0] == t[1][1][0]]
        assert len(hop) == 8 and len(onsite) == 4

    def test_diag_lattice_interaction_degree(self):
        f = build_lattice_model("square_nn_diag", (3, 3), t=1.0, t_diag=0.5)
        ig = interaction_graph_from_hamiltonian(f)
        deg = {}
        for a, b in ig.edges:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        assert deg[4] == 8  # bulk vertex couples to all 8 neighbors

    def test_t_zero_is_diagonal(self):
        f = build_lattice_model("chain", 3, t=0.0, u=2.0)
        assert all(fs[0][0] == fs[1][0] for _, fs in f.terms)

"""Tests for the graph model: ports, cycles, routing, qubit counts."""

import pytest

from conftest import random_connected_graph
from fermigraph.errors import ParseError, RoutingError
from fermigraph.graph import (
    SystemGraph,
    Vertex,
    cycle_basis,
    half_degree_total,
    qubit_count,
    shortest_path,
)
from fermigraph.geometries import gen_lattice, gen_syk_geometry


class TestSystemGraph:
    def test_ports_must_match_incident_edges(self):
        with pytest.raises(ParseError):
            SystemGraph(
                [Vertex(0, "physical", (0,)), Vertex(1, "physical", ())],
                [(0, 1)],
            )

    def test_self_loop_rejected(self):
        with pytest.raises(ParseError):
            SystemGraph.from_edges([(0, 0)])

    def test_parallel_edges_kept(self):
        g = SystemGraph.from_edges([(0, 1), (0, 1)])
        assert g.degree(0) == 2 and len(g.edges) == 2

    def test_canonical_edge_order(self):
        g = SystemGraph.from_edges([(2, 1), (0, 1)])
        assert g.edges == ((0, 1), (1, 2))

    def test_neighbors_in_port_order(self):
        g = gen_lattice("square", (3, 3), "open")
        # center vertex 4: clockwise from top
        assert g.neighbors(4) == [1, 5, 7, 3]


class TestQubitCount:
    def test_cycle_graph(self):
        assert qubit_count(gen_lattice("linear", 6, "periodic")) == 6

    def test_star(self):
        assert qubit_count(gen_syk_geometry("star", 8)) == 12

    def test_isolated_vertex_warns(self):
        g = SystemGraph.from_edges([(0, 1)], n_vertices=3)
        with pytest.warns(UserWarning):
            assert qubit_count(g) == 2

    def test_half_degree_total_is_edge_count(self):
        g = gen_syk_geometry("complete", 6)
        assert half_degree_total(g) == 15
        assert qubit_count(g) == 6 * 3  # ceil(5/2) each


class TestCycleBasis:
    def test_tree_has_empty_basis(self):
        g = SystemGraph.from_edges([(0, 1), (1, 2), (1, 3)])
        assert cycle_basis(g).cycles == []

    def test_cycle_graph_single_cycle(self):
        g = gen_lattice("linear", 5, "periodic")
        cb = cycle_basis(g)
        assert len(cb.cycles) == 1 and len(cb.cycles[0]) == 5

    def test_torus_count(self):
        """L x L periodic square lattice has E - V + 1 independent cycles."""
        for L in (2, 3):
            g = gen_lattice("square", (L, L), "periodic")
            cb = cycle_basis(g)
            assert len(cb.cycles) == len(g.edges) - L * L + 1 == L * L + 1

    def test_cycles_are_closed_walks(self, rng):
        for _ in range(20):
            g = random_connected_graph(rng)
            for cyc in cycle_basis(g).cycles:
                assert len(cyc.vertices) == len(cyc.edges)
                for i, eidx in enumerate(cyc.edges):
                    a = cyc.vertices[i]
                    b = cyc.vertices[(i + 1) % len(cyc.vertices)]
                    assert set(g.edges[eidx]) == {a, b} or (
                        a == b and False
                    )

    def test_spans_cycle_space(self, rng):
        """Every cycle of small graphs is a GF(2) sum of basis cycles."""
        for _ in range(12):
            g = random_connected_graph(rng, max_vertices=6, max_edges=10)
            cb = cycle_basis(g)
            basis_vecs = []
            for cyc in cb.cycles:
                v = 0
                for e in cyc.edges:
                    v ^= 1 << e
                basis_vecs.append(v)

            def reduce(vec):
                for b in basis_vecs:
                    vec = min(vec, vec ^ b)
                return vec

            # enumerate simple cycles via edge subsets with all-even degrees
            ne = len(g.edges)
            if ne > 12:
                continue
            for mask in range(1, 2**ne):
                deg = {}
                for e in range(ne):
                    if (mask >> e) & 1:
                        a, b = g.edges[e]
                        deg[a] = deg.get(a, 0) + 1
                        deg[b] = deg.get(b, 0) + 1
                if all(d % 2 == 0 for d in deg.values()):
                    assert reduce(mask) == 0

    def test_disconnected_raises_by_default(self):
        g = SystemGraph.from_edges([(0, 1), (2, 3)])
        with pytest.raises(RoutingError):
            cycle_basis(g)
        assert cycle_basis(g, require_connected=False).cycles == []


class TestShortestPath:
    def test_adjacent(self):
        g = gen_lattice("square", (3, 3), "open")
        assert shortest_path(g, 0, 1) == [0, 1]

    def test_diagonal_goes_through_one_neighbor(self):
        g = gen_lattice("square", (3, 3), "open")
        path = shortest_path(g, 0, 4)
        assert len(path) == 3 and path == [0, 1, 4]  # lexicographic tie-break

    def test_no_path(self):
        g = SystemGraph.from_edges([(0, 1), (2, 3)])
        with pytest.raises(RoutingError):
            shortest_path(g, 0, 3)

    def test_minimal_against_enumeration(self, rng):
        """Dijkstra cost equals the brute-force minimum over simple paths."""
        for _ in range(15):
            g = random_connected_graph(rng, max_vertices=7, max_edges=12)
            ids = g.vertex_ids()
            weights = {v: int(rng.integers(1, 5)) for v in ids}
            cost = lambda v: weights[v]
            adj = {v: sorted(set(u for _, u in g.adjacency()[v])) for v in ids}

            def all_paths(j, k):
                stack = [(j, [j])]
                while stack:
                    v, path = stack.pop()
                    if v == k:
                        yield path
                        continue
                    for u in adj[v]:
                        if u not in path:
                            stack.append((u, path + [u]))

            j, k = rng.choice(ids, size=2, replace=False)
            j, k = int(j), int(k)
            best = min(
                sum(weights[v] for v in p[1:-1]) for p in all_paths(j, k)
            )
            got = shortest_path(g, j, k, cost)
            assert sum(weights[v] for v in got[1:-1]) == best

    def test_mera_boundary_path_is_logarithmic(self):
        """Opposite boundary points route through the hierarchy in a
        number of hops bounded by the depth, far below the lateral
        distance along the bottom rows."""
        g = gen_syk_geometry("ternary_mera", 81)  # depth 4
        hops = len(shortest_path(g, 0, 40)) - 1
        assert hops <= 3 * 4 + 2
        lateral = 2 * 40 // 3  # bottom-row routing costs ~2 hops per 3 sites
        assert hops < lateral

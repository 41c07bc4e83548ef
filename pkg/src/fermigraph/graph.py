"""System and interaction graphs with ordered ports.

A ``SystemGraph`` is the geometry actually laid out in qubits: vertices
carry an ordered list of ports, one per incident edge, and a vertex of
degree d is allotted ceil(d/2) qubits.  Parallel edges are allowed (a 2x2
periodic lattice needs them), so ports reference *edge indices* rather
than neighbor ids; for simple graphs the two views coincide and helper
constructors accept neighbor-id port lists.

Canonical form: edges are sorted lexicographically as (min, max) pairs at
construction and ports are remapped accordingly, so equal graphs have
identical serializations.
"""

from __future__ import annotations

import heapq
import warnings
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ParseError, RoutingError

Edge = Tuple[int, int]

PHYSICAL = "physical"
VIRTUAL = "virtual"


@dataclass(frozen=True)
class Vertex:
    id: int
    kind: str = PHYSICAL
    ports: Tuple[int, ...] = ()  # ordered incident edge indices


class SystemGraph:
    """Undirected multigraph with per-vertex ordered ports."""

    def __init__(
        self,
        vertices: Iterable[Vertex],
        edges: Sequence[Edge],
        meta: Optional[dict] = None,
    ):
        vlist = sorted(vertices, key=lambda v: v.id)
        ids = [v.id for v in vlist]
        if len(set(ids)) != len(ids):
            raise ParseError("duplicate vertex ids")
        idset = set(ids)

        norm = []
        for a, b in edges:
            if a == b:
                raise ParseError(f"self loop at vertex {a}")
            if a not in idset or b not in idset:
                raise ParseError(f"edge ({a},{b}) references unknown vertex")
            norm.append((min(a, b), max(a, b)))

        # canonical edge order, stable among parallel copies
        order = sorted(range(len(norm)), key=lambda i: (norm[i], i))
        remap = {old: new for new, old in enumerate(order)}
        self.edges: Tuple[Edge, ...] = tuple(norm[i] for i in order)

        incident: Dict[int, List[int]] = {i: [] for i in ids}
        for eidx, (a, b) in enumerate(self.edges):
            incident[a].append(eidx)
            incident[b].append(eidx)

        self.vertices: Dict[int, Vertex] = {}
        for v in vlist:
            ports = tuple(remap[p] for p in v.ports)
            if sorted(ports) != sorted(incident[v.id]):
                raise ParseError(
                    f"ports of vertex {v.id} are not a permutation of its edges"
                )
            if v.kind not in (PHYSICAL, VIRTUAL):
                raise ParseError(f"unknown vertex kind {v.kind!r}")
            self.vertices[v.id] = Vertex(v.id, v.kind, ports)
        self.meta = dict(meta or {})
        self._pair_index: Dict[Edge, List[int]] = {}
        for eidx, e in enumerate(self.edges):
            self._pair_index.setdefault(e, []).append(eidx)

    # ------------------------------------------------------------------
    # convenience constructors

    @classmethod
    def from_neighbor_ports(
        cls,
        vertices: Iterable[Tuple[int, str, Sequence[int]]],
        edges: Sequence[Edge],
        meta: Optional[dict] = None,
    ) -> "SystemGraph":
        """Build a simple graph whose ports are given as neighbor ids."""
        edges = [(min(a, b), max(a, b)) for a, b in edges]
        if len(set(edges)) != len(edges):
            raise ParseError("parallel edges require edge-index ports")
        eidx = {e: i for i, e in enumerate(edges)}
        vlist = []
        for vid, kind, nbrs in vertices:
            ports = tuple(eidx[(min(vid, u), max(vid, u))] for u in nbrs)
            vlist.append(Vertex(vid, kind, ports))
        return cls(vlist, edges, meta)

    @classmethod
    def from_edges(
        cls,
        edges: Sequence[Edge],
        kinds: Optional[Dict[int, str]] = None,
        n_vertices: Optional[int] = None,
        meta: Optional[dict] = None,
    ) -> "SystemGraph":
        """Build with ports in ascending (neighbor, edge) order."""
        kinds = kinds or {}
        ids = set()
        for a, b in edges:
            ids.add(a)
            ids.add(b)
        if n_vertices is not None:
            ids.update(range(n_vertices))
        norm = sorted(
            [(min(a, b), max(a, b)) for a, b in edges], key=lambda e: e
        )
        incident: Dict[int, List[int]] = {i: [] for i in ids}
        for eidx, (a, b) in enumerate(norm):
            incident[a].append(eidx)
            incident[b].append(eidx)
        vlist = []
        for vid in sorted(ids):
            ports = sorted(
                incident[vid], key=lambda e: (_other(norm[e], vid), e)
            )
            vlist.append(Vertex(vid, kinds.get(vid, PHYSICAL), tuple(ports)))
        return cls(vlist, norm, meta)

    # ------------------------------------------------------------------
    # queries

    def __contains__(self, vid: int) -> bool:
        return vid in self.vertices

    def vertex_ids(self) -> List[int]:
        return sorted(self.vertices)

    def physical_ids(self) -> List[int]:
        return [v for v in self.vertex_ids() if self.vertices[v].kind == PHYSICAL]

    def degree(self, vid: int) -> int:
        return len(self.vertices[vid].ports)

    def qubits_at(self, vid: int) -> int:
        return (self.degree(vid) + 1) // 2

    def neighbors(self, vid: int) -> List[int]:
        """Neighbor ids in port order (repeats for parallel edges)."""
        return [_other(self.edges[e], vid) for e in self.vertices[vid].ports]

    def port_of_edge(self, vid: int, eidx: int) -> int:
        """0-based position of edge ``eidx`` in ``vid``'s port list."""
        return self.vertices[vid].ports.index(eidx)

    def edges_between(self, a: int, b: int) -> List[int]:
        return self._pair_index.get((min(a, b), max(a, b)), [])

    def adjacency(self) -> Dict[int, List[Tuple[int, int]]]:
        """vertex -> list of (edge index, neighbor id)."""
        adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in self.vertices}
        for eidx, (a, b) in enumerate(self.edges):
            adj[a].append((eidx, b))
            adj[b].append((eidx, a))
        return adj

    def components(self) -> List[List[int]]:
        adj = self.adjacency()
        seen = set()
        comps = []
        for start in self.vertex_ids():
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                v = stack.pop()
                for _, u in adj[v]:
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, SystemGraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.meta == other.meta
        )


def _other(edge: Edge, vid: int) -> int:
    a, b = edge
    return b if vid == a else a


def qubit_count(g: SystemGraph) -> int:
    """Total qubits: sum over vertices of ceil(degree/2)."""
    isolated = [v for v in g.vertex_ids() if g.degree(v) == 0]
    if isolated:
        warnings.warn(
            f"vertices {isolated} are isolated and receive no qubits",
            stacklevel=2,
        )
    return sum(g.qubits_at(v) for v in g.vertex_ids())


def half_degree_total(g: SystemGraph) -> int:
    """Idealized qubit total sum(d(v)/2) assuming all degrees even.

    Equals the edge count; matches ``qubit_count`` exactly when no vertex
    has odd degree, and undercounts by one qubit per odd-degree vertex pair
    otherwise.
    """
    return len(g.edges)


# ----------------------------------------------------------------------
# cycle basis


@dataclass
class Cycle:
    """A closed walk stored as (vertex sequence, edge index sequence).

    ``vertices`` has one entry per step and is implicitly closed:
    edge ``edges[i]`` joins vertices[i] to vertices[(i+1) % len]."""

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass
class CycleBasis:
    cycles: List[Cycle]
    spanning_tree: Tuple[int, ...] = ()  # edge indices


def cycle_basis(g: SystemGraph, require_connected: bool = True) -> CycleBasis:
    """Fundamental cycles of a BFS spanning tree (forest per component).

    Deterministic given the canonical vertex/edge ordering: the BFS root is
    the smallest vertex id of each component and neighbors are explored in
    edge-index order.  Each cycle uses exactly one non-tree edge.
    """
    if require_connected and not g.is_connected():
        raise RoutingError("graph is disconnected")

    adj = g.adjacency()
    parent_edge: Dict[int, Optional[int]] = {}
    depth: Dict[int, int] = {}
    tree_edges: List[int] = []
    for root in g.vertex_ids():
        if root in parent_edge:
            continue
        parent_edge[root] = None
        depth[root] = 0
        queue = [root]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for eidx, u in sorted(adj[v]):
                if u not in parent_edge:
                    parent_edge[u] = eidx
                    depth[u] = depth[v] + 1
                    tree_edges.append(eidx)
                    queue.append(u)

    tree_set = set(tree_edges)
    cycles: List[Cycle] = []
    for eidx, (a, b) in enumerate(g.edges):
        if eidx in tree_set:
            continue
        # walk both endpoints up to their common ancestor
        pa, pb = [a], [b]
        ea: List[int] = []
        eb: List[int] = []
        va, vb = a, b
        while va != vb:
            if depth[va] >= depth[vb]:
                e = parent_edge[va]
                ea.append(e)
                va = _other(g.edges[e], va)
                pa.append(va)
            else:
                e = parent_edge[vb]
                eb.append(e)
                vb = _other(g.edges[e], vb)
                pb.append(vb)
        # cycle: b -> a via eidx? orient as a-path down from ancestor:
        # vertices: a ... ancestor ... b, then edge eidx closes b -> a
        verts = pa[:-1] + [va] + list(reversed(pb[:-1]))
        edges = ea + list(reversed(eb)) + [eidx]
        cycles.append(Cycle(tuple(verts), tuple(edges)))

    return CycleBasis(cycles, tuple(sorted(tree_edges)))


# ----------------------------------------------------------------------
# routing


def shortest_path(
    g: SystemGraph,
    j: int,
    k: int,
    cost: Optional[Callable[[int], float]] = None,
) -> List[int]:
    """Minimal-cost vertex sequence from j to k.

    The cost of a path is the sum of ``cost(v)`` over its interior
    vertices (default 1 each, i.e. fewest hops).  Ties break to the
    lexicographically smallest vertex sequence.
    """
    if j not in g or k not in g:
        raise RoutingError(f"unknown endpoint {j if j not in g else k}")
    if j == k:
        return [j]
    if cost is None:
        cost = lambda v: 1.0
    adj = g.adjacency()
    best: Dict[int, Tuple[float, Tuple[int, ...]]] = {}
    heap: List[Tuple[float, Tuple[int, ...]]] = [(0.0, (j,))]
    while heap:
        c, path = heapq.heappop(heap)
        v = path[-1]
        if v in best:
            continue
        best[v] = (c, path)
        if v == k:
            return list(path)
        for _, u in sorted(set(adj[v])):
            if u in best:
                continue
            step = 0.0 if u == k else cost(u)
            heapq.heappush(heap, (c + step, path + (u,)))
    raise RoutingError(f"no path between {j} and {k}")


def path_edges(g: SystemGraph, path: Sequence[int]) -> List[int]:
    """Resolve a vertex sequence to edge indices (lowest index wins)."""
    out = []
    for a, b in zip(path, path[1:]):
        cands = g.edges_between(a, b)
        if not cands:
            raise RoutingError(f"({a},{b}) is not an edge")
        out.append(cands[0])
    return out


# ----------------------------------------------------------------------
# interaction graphs


@dataclass
class InteractionGraph:
    """Coupling requirements read off a Hamiltonian: one vertex per mode."""

    n_modes: int
    edges: Tuple[Edge, ...]

    def to_system_graph(self) -> SystemGraph:
        """Promote to a system graph with ascending-id ports."""
        return SystemGraph.from_edges(
            list(self.edges), n_vertices=self.n_modes, meta={"generator": "interaction"}
        )

"""Degree reduction: replace every vertex by a constant-degree expander.

Each original vertex v becomes a contiguous cluster of deg(v) vertices
carrying a copy of ``construct_expander(deg(v))`` (type-1 edges); each
original edge becomes one type-2 edge joining the two slot vertices that
represent its endpoints.  The reduced graph has 2m vertices, maximum degree
at most 10, and volumes translate to plain vertex counts: a canonical vertex
set (one that never splits a cluster) of size s corresponds to an original
vertex set of volume s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InvalidInput
from .expanders import construct_expander, expander_sparsity_floor
from .graph import MultiGraph


@dataclass(frozen=True)
class ReducedGraph:
    """The degree-reduced companion of an original graph.

    Attributes:
        hat_g: the reduced graph on 2m vertices, max degree <= 10.
        clusters: per original vertex, the range of its slot vertices
            (empty for isolated vertices).
        edge_kind: 1 for intra-cluster expander edges, 2 for images of
            original edges, indexed by hat edge id.
        type2_map: original edge id -> hat edge id (a bijection).
        original_n: vertex count of the original graph.
    """

    hat_g: MultiGraph
    clusters: tuple[range, ...]
    edge_kind: tuple[int, ...]
    type2_map: tuple[int, ...]
    original_n: int

    def cluster_of(self, hat_vertex: int) -> int:
        lo, hi = 0, len(self.clusters) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self.clusters[mid].stop <= hat_vertex:
                lo = mid + 1
            else:
                hi = mid
        return lo


def reduce_degree(g: MultiGraph) -> ReducedGraph:
    """Build the reduced graph; linear in the number of edges."""
    g.reject_self_loops("degree reduction")
    if g.m < 1:
        raise InvalidInput("degree reduction needs at least one edge")
    offsets = []
    total = 0
    for v in range(g.n):
        offsets.append(total)
        total += g.degree(v)
    # Slot of edge e at endpoint v = position of e in v's incident list.
    slot_at: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        for pos, eid in enumerate(g.adj[v]):
            slot_at[(eid, v)] = pos

    hat_edges: list[tuple[int, int]] = []
    edge_kind: list[int] = []
    for v in range(g.n):
        d = g.degree(v)
        if d == 0:
            continue
        inner = construct_expander(d)
        off = offsets[v]
        for a, b in inner.edges:
            hat_edges.append((off + a, off + b))
            edge_kind.append(1)
    type2_map = []
    for eid, (u, v) in enumerate(g.edges):
        hu = offsets[u] + slot_at[(eid, u)]
        hv = offsets[v] + slot_at[(eid, v)]
        type2_map.append(len(hat_edges))
        hat_edges.append((hu, hv))
        edge_kind.append(2)

    hat_g = MultiGraph(total, hat_edges)
    assert hat_g.n == 2 * g.m
    assert hat_g.max_degree() <= 10
    clusters = tuple(
        range(offsets[v], offsets[v] + g.degree(v)) for v in range(g.n)
    )
    return ReducedGraph(hat_g, clusters, tuple(edge_kind), tuple(type2_map), g.n)


def is_canonical(r: ReducedGraph, vertices: Iterable[int]) -> bool:
    """True iff the set never splits a cluster."""
    members = set(vertices)
    for cluster in r.clusters:
        if not cluster:
            continue
        inside = sum(1 for u in cluster if u in members)
        if inside not in (0, len(cluster)):
            return False
    return True


def lift_cut(r: ReducedGraph, side: Iterable[int]) -> frozenset[int]:
    """Map an original vertex set to its canonical slot-vertex set."""
    out: set[int] = set()
    for v in side:
        out.update(r.clusters[v])
    return frozenset(out)


def make_canonical(
    r: ReducedGraph,
    host: Iterable[int],
    a_side: Iterable[int],
    b_side: Iterable[int],
) -> tuple[frozenset[int], frozenset[int]]:
    """Resolve every split cluster to one side by per-cluster majority.

    ``host`` must be canonical and partitioned by (a_side, b_side).  Ties
    move the minority B part into A.  Guarantees |A'| >= |A|/2 and
    |B'| >= |B|/2 whenever the input cut sparsity is at most half the
    cluster expanders' sparsity floor; the edge blowup is charged against
    intra-cluster expander edges leaving the cut.
    """
    host_set = set(host)
    a = set(a_side)
    b = set(b_side)
    if a & b or (a | b) != host_set:
        raise InvalidInput("a_side/b_side must partition the host set")
    if not is_canonical(r, host_set):
        raise InvalidInput("host vertex set is not canonical")
    for cluster in r.clusters:
        if not cluster or cluster[0] not in host_set:
            continue
        in_a = [u for u in cluster if u in a]
        if 0 < len(in_a) < len(cluster):
            in_b = [u for u in cluster if u in b]
            if len(in_a) >= len(in_b):
                a.update(in_b)
                b.difference_update(in_b)
            else:
                b.update(in_a)
                a.difference_update(in_a)
    return frozenset(a), frozenset(b)


def canonical_blowup_constant(r: ReducedGraph) -> Fraction:
    """Reported bound 1 + 1/alpha0 on the make_canonical edge blowup.

    Uses the weakest per-cluster sparsity floor actually present.
    """
    sizes = {len(c) for c in r.clusters if len(c) >= 2}
    if not sizes:
        return Fraction(1)
    floor = min(expander_sparsity_floor(s) for s in sizes)
    return 1 + 1 / floor


def project_cut(
    r: ReducedGraph, a_side: Iterable[int], b_side: Iterable[int]
) -> tuple[frozenset[int], frozenset[int]]:
    """Map a canonical partition of all of V(hat_g) back to original vertices.

    Original vertex v lands in A iff its whole (nonempty) cluster does;
    isolated vertices (empty clusters) land in B.
    """
    a = set(a_side)
    b = set(b_side)
    if a & b or len(a) + len(b) != r.hat_g.n:
        raise InvalidInput("canonical sides must partition V(hat_g)")
    if not is_canonical(r, a):
        raise InvalidInput("a_side is not canonical")
    orig_a: set[int] = set()
    orig_b: set[int] = set()
    for v, cluster in enumerate(r.clusters):
        if cluster and cluster[0] in a:
            orig_a.add(v)
        else:
            orig_b.add(v)
    return frozenset(orig_a), frozenset(orig_b)

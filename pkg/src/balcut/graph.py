"""Unweighted undirected multigraphs and exact cut statistics.

Vertices are the integers ``0 .. n-1``.  Parallel edges are kept as separate
edge slots; self-loops are representable (the raw Gabber-Galil construction
produces them transiently) but every partition algorithm rejects them at
entry.  All cut statistics are exact: conductance and sparsity are stored as
``fractions.Fraction`` and every threshold comparison in the package is done
by integer cross-multiplication, never through floats.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidCut, InvalidInput, OracleTooLarge

#: Largest vertex count accepted by the brute-force cut oracles
#: (2^15 - 1 = 32767 proper cuts at n = 16 keeps the suite fast).
ORACLE_LIMIT = 16


class MultiGraph:
    """An immutable multigraph given by an edge list.

    Attributes:
        n: number of vertices.
        edges: tuple of ``(u, v)`` pairs with ``u, v`` in ``[0, n)``.
        adj: per-vertex tuple of incident edge ids; a self-loop appears
            twice, so ``len(adj[v])`` equals ``deg(v)``.
    """

    __slots__ = ("n", "edges", "adj", "_deg", "_loops")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise InvalidInput(f"vertex count must be nonnegative, got {n}")
        edges = tuple((int(u), int(v)) for u, v in edges)
        adj: list[list[int]] = [[] for _ in range(n)]
        deg = [0] * n
        loops = 0
        for eid, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge {eid} endpoint out of range: ({u}, {v})")
            adj[u].append(eid)
            deg[u] += 1
            if u == v:
                loops += 1
                adj[u].append(eid)
                deg[u] += 1
            else:
                adj[v].append(eid)
                deg[v] += 1
        self.n = n
        self.edges = edges
        self.adj = tuple(tuple(a) for a in adj)
        self._deg = tuple(deg)
        self._loops = loops

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def has_self_loops(self) -> bool:
        return self._loops > 0

    def degree(self, v: int) -> int:
        return self._deg[v]

    def degrees(self) -> tuple[int, ...]:
        return self._deg

    def max_degree(self) -> int:
        return max(self._deg, default=0)

    def volume(self, s: Iterable[int] | None = None) -> int:
        """Vol(S) = sum of degrees over S; Vol(G) when S is omitted."""
        if s is None:
            return sum(self._deg)
        return sum(self._deg[v] for v in s)

    def neighbors(self, v: int):
        """Yield (edge id, other endpoint) for every incident edge slot."""
        for eid in self.adj[v]:
            a, b = self.edges[eid]
            yield eid, (b if a == v else a)

    def reject_self_loops(self, operation: str) -> None:
        if self._loops:
            raise InvalidInput(f"{operation} requires a graph without self-loops")

    def __repr__(self) -> str:  # pragma: no cover
        return f"MultiGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Cut:
    """A proper vertex cut with its cached exact statistics."""

    side: frozenset[int]
    delta: int
    vol_s: int
    vol_comp: int
    conductance: Fraction
    sparsity: Fraction

    @property
    def size(self) -> int:
        return len(self.side)


def cut_edge_count(g: MultiGraph, side: frozenset[int] | set[int]) -> int:
    """Exact recount of |E(S, V-S)| by edge enumeration."""
    return sum(1 for u, v in g.edges if (u in side) != (v in side))


def cut_stats(g: MultiGraph, s: Iterable[int]) -> Cut:
    """Compute delta, volumes, conductance and sparsity of a proper cut."""
    side = frozenset(int(v) for v in s)
    if not side or len(side) >= g.n:
        raise InvalidCut(f"cut side must be proper: |S|={len(side)}, n={g.n}")
    if any(v < 0 or v >= g.n for v in side):
        raise InvalidCut("cut side contains an out-of-range vertex")
    delta = cut_edge_count(g, side)
    vol_s = g.volume(side)
    vol_comp = g.volume() - vol_s
    min_vol = min(vol_s, vol_comp)
    min_size = min(len(side), g.n - len(side))
    conductance = Fraction(delta, min_vol) if min_vol else Fraction(0)
    sparsity = Fraction(delta, min_size)
    return Cut(side, delta, vol_s, vol_comp, conductance, sparsity)


def induced_subgraph(g: MultiGraph, s: Iterable[int]) -> tuple[MultiGraph, list[int]]:
    """Return (G[S], index map) with vertices relabeled densely.

    The index map sends new vertex ids back to the originals; its order is
    ascending original id, so the relabeling is deterministic.
    """
    keep = sorted(set(int(v) for v in s))
    if not keep:
        raise InvalidInput("induced subgraph requires a nonempty vertex set")
    if keep[0] < 0 or keep[-1] >= g.n:
        raise InvalidInput("vertex set contains an out-of-range vertex")
    new_id = {v: i for i, v in enumerate(keep)}
    members = set(keep)
    sub_edges = [
        (new_id[u], new_id[v]) for u, v in g.edges if u in members and v in members
    ]
    return MultiGraph(len(keep), sub_edges), keep


def connected_components(g: MultiGraph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by minimum vertex."""
    seen = bytearray(g.n)
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = 1
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for _, w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = 1
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def is_connected(g: MultiGraph) -> bool:
    """True iff the graph has a single connected component (BFS)."""
    if g.n <= 1:
        return True
    return len(connected_components(g)[0]) == g.n


def bfs_levels(g: MultiGraph, sources: Sequence[int], depth_cap: int | None = None,
               alive_edge=None) -> list[float]:
    """Multi-source BFS distances; unreachable (or beyond cap) vertices get inf.

    ``alive_edge`` may be a boolean sequence indexed by edge id restricting
    the traversal to live edges.
    """
    INF = float("inf")
    level: list[float] = [INF] * g.n
    queue = deque()
    for s in sources:
        if level[s] == INF:
            level[s] = 0
            queue.append(s)
    while queue:
        v = queue.popleft()
        lv = level[v]
        if depth_cap is not None and lv >= depth_cap:
            continue
        for eid, w in g.neighbors(v):
            if alive_edge is not None and not alive_edge[eid]:
                continue
            if level[w] == INF:
                level[w] = lv + 1
                queue.append(w)
    return level


def _enumerate_cut_tables(g: MultiGraph):
    """Vectorized delta/volume tables for all proper cuts containing vertex 0.

    Masks encode vertices ``1..n-1``; vertex 0 is always on the S side, which
    enumerates each proper cut exactly once (2^(n-1) - 1 cuts; the all-ones
    mask, S = V, is excluded by the caller).
    """
    n = g.n
    masks = np.arange(1 << (n - 1), dtype=np.int64)
    in_side = [np.ones_like(masks, dtype=bool)]  # vertex 0
    for v in range(1, n):
        in_side.append(((masks >> (v - 1)) & 1).astype(bool))
    delta = np.zeros_like(masks)
    for u, v in g.edges:
        if u != v:
            delta += (in_side[u] ^ in_side[v]).astype(np.int64)
    vol = np.zeros_like(masks)
    for v in range(n):
        if g._deg[v]:
            vol += in_side[v] * g._deg[v]
    size = np.ones_like(masks)
    for v in range(1, n):
        size += in_side[v].astype(np.int64)
    return masks, delta, vol, size


def _mask_to_side(mask: int, n: int) -> frozenset[int]:
    side = {0}
    for v in range(1, n):
        if (mask >> (v - 1)) & 1:
            side.add(v)
    return frozenset(side)


def brute_force_extremum(g: MultiGraph, objective: str) -> tuple[Cut, Fraction]:
    """Exhaustively minimize cut conductance or sparsity.

    Enumerates all 2^(n-1) - 1 proper cuts.  Ties are broken by the
    lexicographically smallest side containing vertex 0.  Disconnected
    graphs yield value 0 with a component-separating cut.
    """
    if objective not in ("conductance", "sparsity"):
        raise InvalidInput(f"unknown objective {objective!r}")
    if g.n < 2:
        raise InvalidInput("extremum needs at least two vertices")
    if g.n > ORACLE_LIMIT:
        raise OracleTooLarge(f"n={g.n} exceeds oracle limit {ORACLE_LIMIT}")

    masks, delta, vol, size = _enumerate_cut_tables(g)
    total_vol = g.volume()
    if objective == "conductance":
        denom = np.minimum(vol, total_vol - vol)
    else:
        denom = np.minimum(size, g.n - size)
    # Exclude S = V (the all-ones mask) and any zero denominators.
    valid = np.ones(len(masks), dtype=bool)
    valid[-1] = False
    valid &= denom > 0
    num = delta[valid].astype(np.float64)
    den = denom[valid].astype(np.float64)
    # Integer ratios here are small enough that float64 ordering is exact.
    ratios = num / den
    best = ratios.min()
    candidates = np.nonzero(valid)[0][ratios == best]
    best_side = min(
        (_mask_to_side(int(masks[i]), g.n) for i in candidates),
        key=lambda side: sorted(side),
    )
    cut = cut_stats(g, best_side)
    value = cut.conductance if objective == "conductance" else cut.sparsity
    return cut, value


def find_bridges(g: MultiGraph) -> list[tuple[int, int, int]]:
    """All bridge edges via iterative lowpoint DFS.

    Returns (edge id, child endpoint, child-side subtree size) triples;
    parallel edges are never bridges.  Deterministic: DFS follows adjacency
    order from vertex 0 upward.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    sub = [1] * n
    out: list[tuple[int, int, int]] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        # frame: [vertex, parent edge id, adjacency iterator, parent skipped?]
        stack = [[root, -1, iter(g.adj[root]), False]]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            frame = stack[-1]
            v, pedge, it = frame[0], frame[1], frame[2]
            advanced = False
            for eid in it:
                if eid == pedge and not frame[3]:
                    frame[3] = True  # the tree edge itself, skipped once
                    continue
                a, b = g.edges[eid]
                if a == b:
                    continue
                w = b if a == v else a
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append([w, eid, iter(g.adj[w]), False])
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    sub[u] += sub[v]
                    if low[v] > disc[u]:
                        out.append((pedge, v, sub[v]))
    return out


def subtree_side(g: MultiGraph, bridge_eid: int, child: int) -> frozenset[int]:
    """The child-side component after removing one bridge edge."""
    seen = {child}
    stack = [child]
    while stack:
        v = stack.pop()
        for eid, w in g.neighbors(v):
            if eid == bridge_eid or w in seen:
                continue
            seen.add(w)
            stack.append(w)
    return frozenset(seen)


def path_congestion(g: MultiGraph, paths) -> int:
    """Exact per-edge congestion of a path collection (vertex sequences).

    Multi-uses of a vertex pair are spread across its parallel copies, so
    the result is the smallest achievable per-edge-slot congestion.
    """
    use: dict[tuple[int, int], int] = {}
    for p in paths:
        for x, y in zip(p, p[1:]):
            key = (x, y) if x < y else (y, x)
            use[key] = use.get(key, 0) + 1
    if not use:
        return 0
    copies: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        key = (u, v) if u < v else (v, u)
        copies[key] = copies.get(key, 0) + 1
    worst = 0
    for key, cnt in use.items():
        k = copies.get(key, 0)
        if k == 0:
            raise InvalidInput(f"path uses a non-edge {key}")
        worst = max(worst, -(-cnt // k))
    return worst


def graph_conductance(g: MultiGraph) -> Fraction:
    """Brute-force Phi(G); only valid up to the oracle limit."""
    return brute_force_extremum(g, "conductance")[1]


def graph_sparsity(g: MultiGraph) -> Fraction:
    """Brute-force Psi(G); only valid up to the oracle limit."""
    return brute_force_extremum(g, "sparsity")[1]

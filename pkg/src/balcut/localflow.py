"""Bounded-height push-relabel (Unit-Flow) with level-cut extraction.

The solver routes integral source mass to degree-capacity sinks under a
per-edge congestion cap of ceil(4/phi) and a vertex-level cap of
ceil((4/phi) * log2ceil(2m)) + 2.  If mass remains unabsorbed, some level
cut {v : level(v) >= i} has conductance below phi; the solver scans every
level threshold, recounts exactly, and returns the sparsest qualifying cut,
so the contract is self-enforcing rather than assumed.  All arithmetic is
integral; phi is an exact rational.

Push order is lowest-label first with FIFO buckets and relabel-to-minimum,
which keeps runs deterministic.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalInvariantBroken, InvalidInput
from .graph import Cut, MultiGraph, cut_stats, path_congestion


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class FlowInstance:
    """A unit-flow problem: per-vertex integral sources and sinks.

    ``check_degree_caps=False`` relaxes the per-vertex bounds
    source(v) <= deg(v) and sink(v) <= deg(v); the expander trimming loop
    needs oversized sources (2/phi units per deleted-edge endpoint).  The
    level-cut volume guarantee (min volume >= excess) is only enforced for
    degree-capped instances.
    """

    g: MultiGraph
    source: tuple[int, ...]
    sink: tuple[int, ...]
    phi: Fraction
    check_degree_caps: bool = True

    def __post_init__(self):
        g = self.g
        if len(self.source) != g.n or len(self.sink) != g.n:
            raise InvalidInput("source/sink functions must cover every vertex")
        if not (0 < self.phi <= 1):
            raise InvalidInput(f"phi must lie in (0, 1], got {self.phi}")
        if any(s < 0 for s in self.source) or any(t < 0 for t in self.sink):
            raise InvalidInput("source and sink values must be nonnegative")
        if sum(self.source) > sum(self.sink):
            raise InvalidInput("total source mass exceeds total sink capacity")
        if self.check_degree_caps:
            for v in range(g.n):
                if self.source[v] > g.degree(v) or self.sink[v] > g.degree(v):
                    raise InvalidInput(
                        f"vertex {v}: source/sink exceeds its degree"
                    )

    @property
    def congestion_cap(self) -> int:
        return _ceil_frac(4 / self.phi)

    @property
    def height_cap(self) -> int:
        log2m = max(1, (2 * max(self.g.m, 1)).bit_length())
        return _ceil_frac(4 / self.phi * log2m) + 2


@dataclass
class Preflow:
    """An integral preflow: signed edge flows, levels, per-vertex mass."""

    flow: list[int]
    level: list[int]
    mass: list[int]
    source: tuple[int, ...]
    sink: tuple[int, ...]

    def absorbed(self, v: int) -> int:
        return min(self.mass[v], self.sink[v])

    def excess(self, v: int) -> int:
        return self.mass[v] - self.absorbed(v)

    def total_excess(self) -> int:
        return sum(self.mass[v] - min(self.mass[v], self.sink[v])
                   for v in range(len(self.mass)))

    def validate(self, inst: FlowInstance) -> None:
        """Exact recount of every preflow invariant; raises on violation."""
        g = inst.g
        cap = inst.congestion_cap
        if any(abs(f) > cap for f in self.flow):
            raise InternalInvariantBroken("edge congestion above cap")
        for v in range(g.n):
            net = inst.source[v]
            for eid in g.adj[v]:
                u, w = g.edges[eid]
                if u == w:
                    continue
                net += self.flow[eid] if w == v else -self.flow[eid]
            # adj lists self-loops twice; loops carry no flow
            if net != self.mass[v]:
                raise InternalInvariantBroken(f"mass mismatch at vertex {v}")
            if net < 0:
                # equivalent to net outflow exceeding the vertex's source mass
                raise InternalInvariantBroken(f"negative mass at vertex {v}")


def _best_level_cut(g: MultiGraph, level: Sequence[int], phi: Fraction,
                    max_level: int, needed_volume: int = 0):
    """Sparsest level cut {v : level >= i} with Phi < phi, exactly recounted.

    Only thresholds whose smaller side volume reaches ``needed_volume``
    qualify.  Returns (side frozenset, threshold) or None.
    """
    if max_level < 1:
        return None
    total_vol = g.volume()
    # delta(i) = # edges with min level < i <= max level, via a difference array
    diff = [0] * (max_level + 2)
    for u, v in g.edges:
        lu, lv = level[u], level[v]
        if lu == lv:
            continue
        lo, hi = (lu, lv) if lu < lv else (lv, lu)
        lo = min(lo, max_level + 1)
        hi = min(hi, max_level + 1)
        if lo < hi:
            diff[lo + 1] += 1
            if hi + 1 <= max_level + 1:
                diff[hi + 1] -= 1
    vol_at = [0] * (max_level + 2)
    for v in range(g.n):
        vol_at[min(level[v], max_level + 1)] += g.degree(v)
    best = None  # (delta, minvol, i)
    delta = 0
    suffix = total_vol
    for i in range(1, max_level + 1):
        delta += diff[i]
        suffix -= vol_at[i - 1]
        if suffix <= 0 or suffix >= total_vol:
            continue
        minvol = min(suffix, total_vol - suffix)
        if minvol < needed_volume:
            continue
        # Phi(S_i) < phi, compared exactly
        if delta * phi.denominator >= phi.numerator * minvol:
            continue
        if (
            best is None
            or delta * best[1] < best[0] * minvol
            or (delta * best[1] == best[0] * minvol and minvol > best[1])
        ):
            best = (delta, minvol, i)
    if best is None:
        return None
    i = best[2]
    side = frozenset(v for v in range(g.n) if level[v] >= i)
    return side, i


class _PushRelabel:
    def __init__(self, inst: FlowInstance):
        g = inst.g
        self.inst = inst
        self.g = g
        self.cap = inst.congestion_cap
        self.h = inst.height_cap
        self.flow = [0] * g.m
        self.level = [0] * g.n
        self.mass = list(inst.source)
        self.ptr = [0] * g.n
        self.max_level = 0
        self.work = 0
        # Buckets are allocated lazily: the height cap scales with 1/phi and
        # can dwarf the number of levels ever touched.
        self.buckets: dict[int, deque[int]] = {}
        self.level_heap: list[int] = []
        self.queued = bytearray(g.n)
        for v in range(g.n):
            if self.mass[v] > inst.sink[v]:
                self._enqueue(v, 0)

    def _enqueue(self, v: int, lvl: int) -> None:
        bucket = self.buckets.get(lvl)
        if bucket is None:
            bucket = deque()
            self.buckets[lvl] = bucket
            heapq.heappush(self.level_heap, lvl)
        bucket.append(v)
        self.queued[v] = 1

    def _residual(self, eid: int, frm: int) -> int:
        u, v = self.g.edges[eid]
        if u == v:
            return 0
        return self.cap - self.flow[eid] if frm == u else self.cap + self.flow[eid]

    def _push(self, eid: int, frm: int, amount: int) -> None:
        u, v = self.g.edges[eid]
        if frm == u:
            self.flow[eid] += amount
            to = v
        else:
            self.flow[eid] -= amount
            to = u
        self.mass[frm] -= amount
        self.mass[to] += amount
        if (
            self.mass[to] > self.inst.sink[to]
            and self.level[to] < self.h
            and not self.queued[to]
        ):
            self._enqueue(to, self.level[to])

    def _discharge(self, v: int) -> None:
        g = self.g
        sink_v = self.inst.sink[v]
        adj = g.adj[v]
        while self.mass[v] > sink_v:
            if self.ptr[v] >= len(adj):
                # relabel to one above the lowest residual neighbor
                new = self.h
                for eid in adj:
                    if self._residual(eid, v) > 0:
                        u, w = g.edges[eid]
                        other = w if u == v else u
                        if self.level[other] + 1 < new:
                            new = self.level[other] + 1
                self.work += len(adj) + 1
                self.ptr[v] = 0
                self.level[v] = min(max(new, self.level[v] + 1), self.h)
                if self.level[v] > self.max_level:
                    self.max_level = self.level[v]
                if self.level[v] < self.h:
                    self._enqueue(v, self.level[v])
                return
            eid = adj[self.ptr[v]]
            self.work += 1
            res = self._residual(eid, v)
            if res > 0:
                u, w = g.edges[eid]
                other = w if u == v else u
                if self.level[other] == self.level[v] - 1:
                    self._push(eid, v, min(self.mass[v] - sink_v, res))
                    continue
            self.ptr[v] += 1

    def run(self, early_check=None, check_interval: int | None = None):
        """Run to quiescence; ``early_check(state) -> cut|None`` may stop it."""
        next_check = check_interval or 0
        heap = self.level_heap
        while heap:
            lvl = heap[0]
            bucket = self.buckets.get(lvl)
            if not bucket:
                heapq.heappop(heap)
                if bucket is not None:
                    del self.buckets[lvl]
                continue
            v = bucket.popleft()
            self.queued[v] = 0
            if self.level[v] != lvl or self.mass[v] <= self.inst.sink[v]:
                continue
            self._discharge(v)
            if check_interval and self.work >= next_check:
                next_check = self.work + check_interval
                found = early_check(self)
                if found is not None:
                    return found
        return None


def bounded_push_relabel(
    inst: FlowInstance,
    *,
    early_cut_volume: int | None = None,
    check_interval: int | None = None,
) -> tuple[Preflow, int, Cut | None]:
    """Route source mass to sinks or expose a low-conductance level cut.

    Returns (preflow, total_excess, cut).  The cut is present whenever
    excess > 0 and satisfies Phi < phi by exact recount; for degree-capped
    instances both cut sides have volume at least the excess.  Passing
    ``early_cut_volume`` stops as soon as some level cut has Phi < phi and
    both sides' volumes reach that target; the preflow is then still a
    valid preflow, just not quiescent.
    """
    g = inst.g
    solver = _PushRelabel(inst)

    early = None
    if early_cut_volume is not None:
        def early(state: _PushRelabel):
            return _best_level_cut(
                g, state.level, inst.phi, state.max_level,
                needed_volume=early_cut_volume,
            )

    hit = solver.run(
        early_check=early,
        check_interval=check_interval if early_cut_volume is not None else None,
    )
    pf = Preflow(solver.flow, solver.level, solver.mass, inst.source, inst.sink)
    pf.validate(inst)
    excess = pf.total_excess()
    if hit is not None:
        side, _ = hit
        cut = cut_stats(g, side)
        _check_cut(cut, inst, early_cut_volume or 0)
        return pf, excess, cut
    if excess == 0:
        return pf, 0, None
    found = _best_level_cut(g, solver.level, inst.phi, solver.max_level,
                            needed_volume=excess if inst.check_degree_caps else 0)
    if found is None and inst.check_degree_caps:
        # fall back to the sparsest level cut regardless of volume before failing
        found = _best_level_cut(g, solver.level, inst.phi, solver.max_level)
    if found is None:
        raise InternalInvariantBroken(
            "positive excess but no level cut below phi; solver bug"
        )
    cut = cut_stats(g, found[0])
    _check_cut(cut, inst, excess if inst.check_degree_caps else 0)
    return pf, excess, cut


def _check_cut(cut: Cut, inst: FlowInstance, needed_volume: int) -> None:
    if cut.conductance >= inst.phi:
        raise InternalInvariantBroken(
            f"level cut conductance {cut.conductance} not below {inst.phi}"
        )
    if min(cut.vol_s, cut.vol_comp) < needed_volume:
        raise InternalInvariantBroken(
            "level cut volume below the excess it must certify"
        )


def decompose_preflow(g: MultiGraph, pf: Preflow, inst: FlowInstance) -> list[list[int]]:
    """Decompose a preflow into source-to-sink vertex paths by DFS.

    Each source vertex contributes one walk per source unit.  Walks ending
    at unabsorbed excess are cancelled (their flow is consumed but no path
    is emitted); flow cycles encountered along a walk are erased in place.
    Runs in O(total flow + m).
    """
    rem = [abs(f) for f in pf.flow]
    out_arcs: list[list[int]] = [[] for _ in range(g.n)]
    for eid, f in enumerate(pf.flow):
        if f > 0:
            out_arcs[g.edges[eid][0]].append(eid)
        elif f < 0:
            out_arcs[g.edges[eid][1]].append(eid)
    ptr = [0] * g.n
    sink_left = [pf.absorbed(v) for v in range(g.n)]
    excess_left = [pf.excess(v) for v in range(g.n)]
    paths: list[list[int]] = []
    for a in range(g.n):
        for _ in range(inst.source[a]):
            path = [a]
            pos = {a: 0}
            consumed: list[int] = []
            while True:
                v = path[-1]
                if sink_left[v] > 0:
                    sink_left[v] -= 1
                    paths.append(path)
                    break
                if excess_left[v] > 0:
                    excess_left[v] -= 1
                    break  # cancelled walk: flow consumed, no path emitted
                advanced = False
                while ptr[v] < len(out_arcs[v]):
                    eid = out_arcs[v][ptr[v]]
                    if rem[eid] > 0:
                        rem[eid] -= 1
                        u, w = g.edges[eid]
                        nxt = w if pf.flow[eid] > 0 else u
                        if nxt in pos:
                            # erase the flow cycle, keep the consumed units gone
                            j = pos[nxt]
                            for drop in path[j + 1:]:
                                del pos[drop]
                            del path[j + 1:]
                        else:
                            pos[nxt] = len(path)
                            path.append(nxt)
                        advanced = True
                        break
                    ptr[v] += 1
                if not advanced:
                    raise InternalInvariantBroken(
                        f"walk stranded at vertex {v}; preflow bookkeeping bug"
                    )
    return paths


@dataclass
class PairRouting:
    """A matching between two terminal sets plus explicit routing paths."""

    matching: list[tuple[int, int]]
    paths: list[list[int]]
    congestion: int

    @property
    def value(self) -> int:
        return len(self.matching)


def route_or_cut_1pair(
    g: MultiGraph,
    a_side,
    b_side,
    z: int,
    psi: Fraction,
    *,
    early_check_interval: int | None = None,
) -> PairRouting | Cut:
    """Route A to B almost-perfectly or find a sparse fairly-large cut.

    Either returns a routing of value >= |A| - z with per-edge congestion
    at most ceil(4*Delta/psi), or a cut (X, Y) with Psi <= psi and
    |X|, |Y| >= z / Delta, both recounted exactly.
    """
    a = sorted(set(a_side))
    b = sorted(set(b_side))
    if not a or set(a) & set(b):
        raise InvalidInput("terminal sets must be disjoint and A nonempty")
    if len(a) > len(b):
        raise InvalidInput("need |A| <= |B|")
    if z < 0:
        raise InvalidInput("z must be nonnegative")
    if not (0 < psi < 1):
        raise InvalidInput("psi must lie in (0, 1)")
    delta = max(g.max_degree(), 1)
    phi = Fraction(psi) / delta
    source = [0] * g.n
    sink = [0] * g.n
    for v in a:
        source[v] = 1
    for v in b:
        sink[v] = 1
    inst = FlowInstance(g, tuple(source), tuple(sink), phi)
    interval = early_check_interval
    pf, excess, cut = bounded_push_relabel(
        inst,
        early_cut_volume=max(z, 1) if interval else None,
        check_interval=interval,
    )
    # Any level cut with Phi < psi/Delta and both volumes >= max(z, 1) is a
    # valid answer on its own (sparsity <= psi, sizes >= z/Delta by volume).
    if cut is not None and min(cut.vol_s, cut.vol_comp) >= max(z, 1):
        _assert_pair_cut(g, cut, z, delta, psi)
        return cut
    if excess > z:
        # The unit-flow volume guarantee (min vol >= excess > z) should have
        # produced a big-enough cut above.
        raise InternalInvariantBroken("excess above z but no qualifying cut")
    # excess <= z and the flow is quiescent: decompose into routed paths
    paths = decompose_preflow(g, pf, inst)
    if len(paths) < len(a) - z:
        raise InternalInvariantBroken("path decomposition lost routed units")
    matching = [(p[0], p[-1]) for p in paths]
    seen_a = {u for u, _ in matching}
    seen_b = {v for _, v in matching}
    if len(seen_a) != len(matching) or len(seen_b) != len(matching):
        raise InternalInvariantBroken("decomposition produced repeated endpoints")
    congestion = path_congestion(g, paths)
    if congestion > inst.congestion_cap:
        raise InternalInvariantBroken("routing congestion above 4*Delta/psi cap")
    return PairRouting(matching, paths, congestion)


def _assert_pair_cut(g, cut: Cut, z: int, delta: int, psi: Fraction) -> None:
    if cut.sparsity > psi:
        raise InternalInvariantBroken(
            f"matching-player cut sparsity {cut.sparsity} exceeds {psi}"
        )
    if min(cut.size, g.n - cut.size) * delta < z:
        raise InternalInvariantBroken("matching-player cut smaller than z/Delta")



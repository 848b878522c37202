"""Explicit constant-degree expander constructions and expander composition.

The base construction places, for each vertex (x, y) of the k x k torus, the
eight neighbors (x +- 2y, y), (x +- (2y+1), y), (x, y +- 2x), (x, y +- (2x+1))
with arithmetic mod k.  Collisions that produce u == v are dropped (self-loop
cleanup); collisions that duplicate a pair are kept as parallel edges, so the
final maximum degree is at most 8.  Arbitrary sizes are reached by matching
pendant vertices onto the next smaller torus, which at worst halves sparsity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CompositionError, DegreeTooHigh, InvalidParam
from .graph import MultiGraph

#: Degree bound for every constructed expander.
MAX_EXPANDER_DEGREE = 9


#: Brute-forced Psi(gabber_galil(k)) regression constants (frozen by tests).
TORUS_SPARSITY = {2: Fraction(2), 3: Fraction(2), 4: Fraction(2)}


@dataclass(frozen=True)
class ExpanderParams:
    """Certified sparsity floor for constructed expanders.

    ``alpha0`` is a build-time regression constant: a global lower bound on
    ``Psi(construct_expander(n))`` for n <= 500, verified against brute
    force (n <= 16) and the Cheeger bound (larger n) by the regression
    tests.  Per-size floors from :func:`expander_sparsity_floor` are tighter
    and preferred wherever a specific size is known.
    """

    alpha0: Fraction = Fraction(1, 10)
    max_degree: int = MAX_EXPANDER_DEGREE


def gabber_galil(k: int) -> MultiGraph:
    """The 8-neighbor torus graph on Z_k x Z_k, with self-loops dropped."""
    if k < 2:
        raise InvalidParam(f"torus construction needs k >= 2, got {k}")
    edges = []
    for x in range(k):
        for y in range(k):
            u = x * k + y
            for nx, ny in (
                ((x + 2 * y) % k, y),
                ((x - 2 * y) % k, y),
                ((x + 2 * y + 1) % k, y),
                ((x - 2 * y - 1) % k, y),
                (x, (y + 2 * x) % k),
                (x, (y - 2 * x) % k),
                (x, (y + 2 * x + 1) % k),
                (x, (y - 2 * x - 1) % k),
            ):
                v = nx * k + ny
                if u < v:
                    edges.append((u, v))
                # u == v: self-loop collision, dropped; u > v: counted once
                # from the other endpoint (the neighbor map is symmetric).
    return MultiGraph(k * k, edges)


@lru_cache(maxsize=None)
def construct_expander(n: int) -> MultiGraph:
    """An n-vertex expander with maximum degree at most 9.

    n <= 9 returns the complete graph; larger n takes the torus on
    (k-1)^2 vertices for the unique k with (k-1)^2 < n <= k^2 and matches
    the remaining n - (k-1)^2 vertices each onto a distinct torus vertex.
    """
    if n < 1:
        raise InvalidParam(f"expander size must be positive, got {n}")
    if n <= 9:
        return MultiGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    k = 1
    while k * k < n:
        k += 1
    base = gabber_galil(k - 1)
    extra = n - (k - 1) ** 2
    edges = list(base.edges)
    # Pendants are matched to the first `extra` torus vertices (all distinct;
    # extra <= 2k - 1 < (k-1)^2 for k >= 4, and n <= 9 covers smaller k).
    edges.extend((j, base.n + j) for j in range(extra))
    return MultiGraph(n, edges)


@lru_cache(maxsize=None)
def expander_sparsity_floor(n: int) -> Fraction:
    """A certified lower bound on Psi(construct_expander(n)).

    Exact brute force up to the oracle limit; above it, the Cheeger bound
    lambda2/2 (which lower-bounds conductance and hence sparsity), shaved
    by a numerical safety margin and rounded down to a fraction.
    """
    from .graph import ORACLE_LIMIT, brute_force_extremum
    from .spectral import lambda2_normalized

    if n < 2:
        return Fraction(1)  # vacuous: no proper cuts exist
    h = construct_expander(n)
    if n <= ORACLE_LIMIT:
        return brute_force_extremum(h, "sparsity")[1]
    lam = max(lambda2_normalized(h) / 2.0 - 1e-6, 0.0)
    return Fraction(int(lam * (1 << 30)), 1 << 30)


def is_matching(pairs) -> bool:
    """True iff no endpoint repeats on either side (sides are independent)."""
    left = [u for u, _ in pairs]
    right = [v for _, v in pairs]
    return len(set(left)) == len(left) and len(set(right)) == len(right)


def partition_into_matchings(g: MultiGraph) -> list[list[int]]:
    """Greedy edge coloring into at most 2*Delta - 1 <= 17 matchings.

    Returns a list of matchings, each a list of edge ids; their disjoint
    union is E(g).
    """
    if g.max_degree() > MAX_EXPANDER_DEGREE:
        raise DegreeTooHigh(
            f"matching partition needs degree <= {MAX_EXPANDER_DEGREE}, got {g.max_degree()}"
        )
    g.reject_self_loops("matching partition")
    matchings: list[list[int]] = []
    used: list[set[int]] = []
    for eid, (u, v) in enumerate(g.edges):
        for slot, members in enumerate(used):
            if u not in members and v not in members:
                matchings[slot].append(eid)
                members.add(u)
                members.add(v)
                break
        else:
            matchings.append([eid])
            used.append({u, v})
    assert len(matchings) <= 2 * MAX_EXPANDER_DEGREE - 1
    return matchings


def compose_expanders(
    core: MultiGraph,
    blocks: list[MultiGraph],
    matchings: dict[int, list[tuple[int, int]]],
) -> tuple[MultiGraph, list[list[int]]]:
    """Glue block expanders along a core expander.

    ``matchings[eid]`` lists, for core edge ``eid = (i, j)``, exactly N
    vertex pairs (block-local ids) between block i and block j, with
    distinct endpoints on each side within that matching.  N must satisfy
    N <= |V(block)| <= gamma*N for all blocks; the caller picks N implicitly
    through the matching cardinalities, which must all be equal.

    Returns the composed graph on the disjoint union of the block vertex
    sets plus the per-block global id ranges.
    """
    if len(blocks) != core.n:
        raise CompositionError(
            f"core has {core.n} vertices but {len(blocks)} blocks were given"
        )
    if any(u == v for u, v in core.edges):
        raise CompositionError("core graph must not have self-loops")
    offsets = []
    total = 0
    for b in blocks:
        offsets.append(total)
        total += b.n
    cardinalities = {len(pairs) for pairs in matchings.values()}
    if core.m and (set(matchings) != set(range(core.m)) or len(cardinalities) != 1):
        raise CompositionError("need exactly one N-pair matching per core edge")
    n_pairs = cardinalities.pop() if cardinalities else 0
    if core.m and any(n_pairs > b.n for b in blocks):
        raise CompositionError("matching cardinality exceeds a block size")
    edges = []
    for bi, b in enumerate(blocks):
        off = offsets[bi]
        edges.extend((off + u, off + v) for u, v in b.edges)
    for eid in range(core.m):
        i, j = core.edges[eid]
        pairs = matchings[eid]
        if not is_matching(pairs):
            raise CompositionError(f"core edge {eid}: repeated endpoint in matching")
        for u, v in pairs:
            if not (0 <= u < blocks[i].n and 0 <= v < blocks[j].n):
                raise CompositionError(f"core edge {eid}: endpoint outside its block")
            edges.append((offsets[i] + u, offsets[j] + v))
    ranges = [list(range(offsets[i], offsets[i] + blocks[i].n)) for i in range(len(blocks))]
    return MultiGraph(total, edges), ranges

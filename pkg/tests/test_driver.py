import random
from fractions import Fraction

import pytest

from balcut.cutmatch import CutPlayerParams
from balcut.driver import (
    ApproxCutResult,
    BalCutPruneResult,
    NoBalancedSparseCutCertificate,
    WitnessResult,
    bal_cut_prune,
    expander_decomposition,
    iterations_final_cut,
    lowest_conductance_cut,
    sparse_cut_or_expander,
    sparsest_cut,
)
from balcut.expanders import construct_expander
from balcut.generators import (
    barbell_graph,
    complete_graph,
    cycle_graph,
    random_connected_graph,
    two_triangles_bridge,
)
from balcut.graph import (
    Cut,
    MultiGraph,
    brute_force_extremum,
    cut_edge_count,
    graph_conductance,
    graph_sparsity,
    induced_subgraph,
)


def check_bcp(g, phi, res: BalCutPruneResult):
    vol = g.volume()
    assert res.a_side | res.b_side == frozenset(range(g.n))
    assert not (res.a_side & res.b_side)
    recount = cut_edge_count(g, res.a_side) if res.b_side else 0
    assert recount == res.cut_edges
    if res.cut_edges:
        assert res.cut_edges <= res.alpha * phi * vol
    if res.branch == "balanced":
        assert 3 * g.volume(res.a_side) >= vol
        assert 3 * g.volume(res.b_side) >= vol
    else:
        sub, _ = induced_subgraph(g, res.a_side)
        if 2 <= sub.n <= 16:
            assert graph_conductance(sub) >= phi
        assert res.certified_phi is not None and res.certified_phi > 0


def test_witness_branch_on_expander():
    g = construct_expander(64)
    res = iterations_final_cut(g, Fraction(1, 8), g.n, 1)
    assert isinstance(res, WitnessResult)
    # a generous z means the matcher never needs to cut
    assert res.psi_witness > 0
    assert res.congestion >= 1
    h = res.witness.h_graph()
    assert h.n >= g.n


def test_cut_branch_on_bounded_degree_barbell():
    from balcut.generators import random_regularish_graph

    block = random_regularish_graph(60, 3, seed=4)
    edges = list(block.edges) + [(60 + u, 60 + v) for u, v in block.edges]
    edges.append((0, 60))
    g = MultiGraph(120, edges)
    res = iterations_final_cut(g, Fraction(1, 5), 4, 1)
    if isinstance(res, Cut):
        assert res.sparsity <= Fraction(1, 5)
    else:
        assert res.psi_witness > 0  # contract allows either branch


def test_bal_cut_prune_expander_fast_path():
    g = construct_expander(12)
    res = bal_cut_prune(g, Fraction(1, 100), 1)
    assert res.branch == "pruned"
    assert not res.b_side
    assert res.certified_phi >= Fraction(1, 100)
    check_bcp(g, Fraction(1, 100), res)


def test_bal_cut_prune_barbell_balanced():
    g = barbell_graph(6, 1)
    res = bal_cut_prune(g, Fraction(1, 4), 1)
    assert res.branch == "balanced"
    assert res.cut_edges == 1
    check_bcp(g, Fraction(1, 4), res)


def test_bal_cut_prune_single_edge():
    g = MultiGraph(2, [(0, 1)])
    res = bal_cut_prune(g, Fraction(1, 2), 1)
    check_bcp(g, Fraction(1, 2), res)


def test_bal_cut_prune_corpus():
    rng = random.Random(11)
    for seed in range(40):
        n = rng.randint(4, 12)
        g = random_connected_graph(n, 0.35, 1000 + seed)
        phi = Fraction(1, rng.choice([3, 5, 10, 20]))
        res = bal_cut_prune(g, phi, 1)
        check_bcp(g, phi, res)


def test_bal_cut_prune_named_families():
    cases = [
        (cycle_graph(8), Fraction(1, 10)),
        (complete_graph(9), Fraction(1, 4)),
        (two_triangles_bridge(), Fraction(1, 8)),
        (barbell_graph(4, 3), Fraction(1, 6)),
        (MultiGraph(7, [(0, i) for i in range(1, 7)]), Fraction(1, 5)),  # star
    ]
    for g, phi in cases:
        res = bal_cut_prune(g, phi, 1)
        check_bcp(g, phi, res)


def test_bal_cut_prune_rejects_bad_params():
    g = complete_graph(4)
    from balcut.errors import InvalidInput, ParamError

    with pytest.raises(ParamError):
        bal_cut_prune(g, Fraction(3, 2), 1)
    with pytest.raises(InvalidInput):
        bal_cut_prune(MultiGraph(3, []), Fraction(1, 2), 1)


def test_bal_cut_prune_disconnected():
    g = MultiGraph(8, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (6, 7)])
    res = bal_cut_prune(g, Fraction(1, 4), 1)
    assert res.branch == "balanced"
    assert res.cut_edges == 0
    check_bcp(g, Fraction(1, 4), res)


def test_decomposition_single_expander():
    g = construct_expander(24)
    dec = expander_decomposition(g, Fraction(1, 2), 1)
    assert len(dec.clusters) == 1
    assert dec.inter_cluster_edges == 0
    assert all(c > 0 for c in dec.certificates)


def test_decomposition_path_graph():
    from balcut.generators import path_graph

    g = path_graph(60)
    eps = Fraction(1, 3)
    dec = expander_decomposition(g, eps, 1)
    assert dec.inter_cluster_edges <= eps * g.volume()
    assert sorted(v for c in dec.clusters for v in c) == list(range(60))
    assert all(c > 0 for c in dec.certificates)


def test_decomposition_volume_identity():
    g = barbell_graph(8, 4)
    eps = Fraction(1, 3)
    dec = expander_decomposition(g, eps, 1)
    label = {}
    for ci, cluster in enumerate(dec.clusters):
        for v in cluster:
            label[v] = ci
    inter = sum(1 for u, v in g.edges if label[u] != label[v])
    assert inter == dec.inter_cluster_edges
    cluster_vols = sum(
        g.volume(c) - sum(
            1 for u, v in g.edges for w in (u, v)
            if label[u] != label[v] and w in set(c)
        )
        for c in dec.clusters
    )
    assert cluster_vols + 2 * inter == g.volume()


def test_sparse_cut_or_expander_branches():
    barbell = barbell_graph(6, 1)
    res = sparse_cut_or_expander(barbell, Fraction(1, 4), 2, 1)
    if isinstance(res, Cut):
        assert res.sparsity <= Fraction(1, 4)
        assert min(res.size, barbell.n - res.size) >= 2
    else:
        assert res.floor > 0

    g = construct_expander(14)
    res = sparse_cut_or_expander(g, Fraction(1, 50), 1, 1)
    if isinstance(res, NoBalancedSparseCutCertificate):
        # certified floor must hold against brute force on n <= 14
        psi_true = graph_sparsity(g)
        if res.min_side <= 1:
            assert psi_true >= res.floor

    res = sparse_cut_or_expander(complete_graph(8), Fraction(1, 2), 5, 1)
    assert isinstance(res, NoBalancedSparseCutCertificate)  # z > n/2


def test_sparsest_cut_exact_families():
    res = sparsest_cut(cycle_graph(8), 1)
    assert res.value == Fraction(1, 2)
    assert res.floor > 0 and res.factor >= 1

    res = sparsest_cut(complete_graph(6), 1)
    assert res.value == graph_sparsity(complete_graph(6))


def test_sparsest_cut_factor_validity_on_corpus():
    worst = 0.0
    for seed in range(30):
        g = random_connected_graph(random.Random(seed).randint(4, 10), 0.4, seed)
        res = sparsest_cut(g, 1)
        optimum = graph_sparsity(g)
        assert res.floor <= optimum  # the certified floor is genuine
        assert res.value >= optimum
        if res.floor > 0:
            assert float(res.value) <= res.factor * float(optimum) + 1e-9
            worst = max(worst, res.factor)
    assert worst < 1e6


def test_lowest_conductance_families():
    res = lowest_conductance_cut(two_triangles_bridge(), 1)
    assert res.value == Fraction(1, 7)
    res = lowest_conductance_cut(complete_graph(4), 1)
    assert res.value == Fraction(2, 3)


def test_lowest_conductance_factor_validity():
    for seed in range(20):
        g = random_connected_graph(random.Random(200 + seed).randint(4, 10), 0.45, 200 + seed)
        res = lowest_conductance_cut(g, 1)
        optimum = graph_conductance(g)
        assert res.floor <= optimum
        assert res.value >= optimum
        if res.floor > 0:
            assert float(res.value) <= res.factor * float(optimum) + 1e-9


def test_determinism_of_drivers():
    g = barbell_graph(5, 2)
    r1 = bal_cut_prune(g, Fraction(1, 4), 1)
    r2 = bal_cut_prune(g, Fraction(1, 4), 1)
    assert r1.a_side == r2.a_side and r1.report == r2.report
    d1 = expander_decomposition(g, Fraction(1, 2), 1)
    d2 = expander_decomposition(g, Fraction(1, 2), 1)
    assert d1.clusters == d2.clusters

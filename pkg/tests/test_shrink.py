from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpcc.errors import InvalidParams, NoProgress
from mpcc.generators import GenSpec, family, generate
from mpcc.graph import Graph
from mpcc.mpc import CostLedger, MpcConfig
from mpcc.oracles import oracle_components
from mpcc.shrink import (ShrinkMapping, ShrinkResult, hook_arcs, induced_labels, shrink_phase,
                         shrink_round)


def six_cycle():
    # ids 1..6, id 0 unused
    alive = [False] + [True] * 6
    return Graph(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)], alive=alive)


def test_hooking_on_six_cycle():
    out = hook_arcs(six_cycle())
    # min-id arcs, 2 -> 1 dropped by the lower-source rule, no pruning needed
    assert out.tolist() == [-1, 2, -1, 2, 3, 4, 1]


@pytest.mark.parametrize("keep,edges,live", [
    (0.0, {(2, 4), (4, 5), (5, 6), (2, 6)}, [2, 4, 5, 6]),
    (1.0, {(2, 4), (4, 6), (2, 6)}, [2, 4, 6]),
])
def test_six_cycle_round(keep, edges, live):
    h, step, stats = shrink_round(six_cycle(), seed=0, round_index=0, keep_override=keep)
    assert step[1] == 2 and step[3] == 2
    assert stats.absorbed == 2
    assert h.live_vertices().tolist() == live
    assert h.edge_set() == edges
    assert stats.edges_after <= stats.edges_before


def test_single_edge_merges_with_forced_keep():
    g = Graph(2, [(0, 1)])
    assert hook_arcs(g).tolist() == [1, -1]
    h, step, stats = shrink_round(g, 0, 0, keep_override=1.0)
    assert h.num_live == 1 and h.m == 0
    assert step.tolist() == [1, 1]
    assert stats.pair_merged == 1


def test_pruning_cascade():
    # 0 <-> 1 keeps 0 -> 1; 3 and 4 point at 2, so 2 loses its arc to 1
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (2, 4)])
    assert hook_arcs(g).tolist() == [1, -1, -1, 2, 2]


@pytest.mark.parametrize("seed", range(20))
def test_two_triangles_stay_apart(seed):
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    res = shrink_phase(g, 1, seed)
    lab = induced_labels(res)
    assert lab.tolist() == [0, 0, 0, 3, 3, 3]


graphs = st.integers(2, 40).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                                             min_size=1, max_size=80), st.integers(0, 2**32)))


@settings(max_examples=150, deadline=None)
@given(graphs)
def test_round_preserves_components_and_edges(case):
    n, pairs, seed = case
    g = Graph(n, pairs)
    alive = g.alive & (g.degrees() > 0)
    g = g.with_alive(alive)
    h, step, stats = shrink_round(g, seed, 0)
    assert h.m <= g.m
    moved = np.flatnonzero(step != np.arange(n))
    for v in moved.tolist():
        assert g.has_edge(v, int(step[v]))
        assert step[step[v]] == step[v]
    comp_g = oracle_components(g).label
    comp_h = oracle_components(h).label
    live = np.flatnonzero(g.alive)
    a = comp_g[live]
    b = comp_h[step[live]]
    assert len(set(zip(a.tolist(), b.tolist()))) == len(set(a.tolist())) == len(set(b.tolist()))


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_phase_preserves_components(case):
    n, pairs, seed = case
    g = Graph(n, pairs)
    res = shrink_phase(g, 1, seed)
    assert oracle_components(g).same_partition(type(oracle_components(g))(induced_labels(res)))
    assert res.graph.m == 0
    assert np.all(res.mapping.f[res.mapping.retired] >= 0)


def test_target_at_least_n_is_identity():
    g = generate(GenSpec("path", n=10))
    res = shrink_phase(g, 10, seed=1)
    assert res.rounds == 0 and res.graph is g
    assert res.mapping.f.tolist() == list(range(10))


def test_cycle_10k_single_component():
    g = generate(GenSpec("cycle", n=10_000))
    target = max(1, int(10_000 / np.log2(10_000) ** 5))
    res = shrink_phase(g, target, seed=4)
    assert res.graph.num_live <= target
    assert np.unique(induced_labels(res)).tolist() == [0]


def test_path_mean_reduction_below_one():
    g = generate(GenSpec("path", n=10_000))
    factors = []
    for seed in range(10):
        res = shrink_phase(g, 1, seed)
        factors += [s.live_after / s.live_before for s in res.history]
    assert np.mean(factors) < 1


def test_edges_never_grow_across_rounds():
    g = family("random_tree", 5000, seed=2)
    res = shrink_phase(g, 1, seed=7)
    for s in res.history:
        assert s.edges_after <= s.edges_before
        assert s.live_after <= s.live_before


def test_no_progress_detected():
    with pytest.raises(NoProgress):
        shrink_phase(Graph(2, [(0, 1)]), 1, seed=0, keep_override=0.0)
    with pytest.raises(NoProgress):
        shrink_phase(generate(GenSpec("path", n=1000)), 1, seed=0, max_rounds=2)
    with pytest.raises(InvalidParams):
        shrink_phase(Graph(2, [(0, 1)]), 0, seed=0)


def test_ledger_charges_three_primitives_per_round():
    g = generate(GenSpec("cycle", n=2000))
    led = CostLedger(MpcConfig(0.5, 2000, 4000.0, 8.0))
    res = shrink_phase(g, 1, seed=3, ledger=led)
    assert led.rounds_charged == res.rounds * 3 * 2
    assert led.primitive_counts["sort"] == res.rounds


def test_mapping_composition():
    m = ShrinkMapping.identity(4).then(np.array([1, 1, 2, 2])).then(np.array([0, 2, 2, 3]))
    assert m.f.tolist() == [2, 2, 2, 2]
    assert m.pairs().tolist() == [[0, 2], [1, 2], [2, 2], [3, 2]]


def test_seed_determinism():
    g = family("random_tree", 3000, seed=1)
    a = shrink_phase(g, 10, seed=5)
    b = shrink_phase(g, 10, seed=5)
    assert np.array_equal(a.mapping.f, b.mapping.f) and a.graph == b.graph
    assert isinstance(a, ShrinkResult)

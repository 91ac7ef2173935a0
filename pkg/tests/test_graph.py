from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpcc._kernels import csr_from_pairs
from mpcc.graph import Graph, normalize_edges


def reference_normalize(n, pairs):
    return sorted({(min(u, v), max(u, v)) for u, v in pairs if u != v})


edge_lists = st.integers(1, 40).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                                             max_size=120)))


@settings(max_examples=200, deadline=None)
@given(edge_lists)
def test_normalize_matches_set_reference(case):
    n, pairs = case
    got = normalize_edges(n, np.asarray(pairs, dtype=np.int64).reshape(-1, 2))
    assert [tuple(e) for e in got.tolist()] == reference_normalize(n, pairs)


@settings(max_examples=100, deadline=None)
@given(edge_lists)
def test_normalization_is_idempotent(case):
    n, pairs = case
    g = Graph(n, pairs)
    assert g.is_normalized()
    assert Graph(n, g.edges) == g


@settings(max_examples=100, deadline=None)
@given(edge_lists)
def test_csr_rows_sorted_and_symmetric(case):
    n, pairs = case
    g = Graph(n, pairs)
    indptr, indices = g.csr()
    adj = {v: set() for v in range(n)}
    for u, v in reference_normalize(n, pairs):
        adj[u].add(v)
        adj[v].add(u)
    for v in range(n):
        row = indices[indptr[v]:indptr[v + 1]].tolist()
        assert row == sorted(adj[v])
    src, dst = g.directed()
    assert np.array_equal(np.bincount(src, minlength=n), g.degrees())
    assert set(zip(src.tolist(), dst.tolist())) == {(u, v) for u in adj for v in adj[u]}


def test_csr_kernel_handles_loops_and_duplicates():
    us = np.array([0, 1, 1, 2, 2, 3], dtype=np.int64)
    vs = np.array([1, 0, 1, 3, 3, 0], dtype=np.int64)
    indptr, indices = csr_from_pairs(4, us, vs)
    assert indptr.tolist() == [0, 2, 3, 4, 6]
    assert indices.tolist() == [1, 3, 0, 3, 0, 2]


def test_path_basics():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.m == 3
    assert g.neighbors(1).tolist() == [0, 2]
    assert g.has_edge(2, 1) and not g.has_edge(0, 3)
    assert g.degrees().tolist() == [1, 2, 2, 1]
    assert g.edge_set() == {(0, 1), (1, 2), (2, 3)}


def test_loops_and_duplicates_dropped():
    g = Graph(3, [(0, 0), (1, 0), (0, 1), (2, 1)])
    assert g.edges.tolist() == [[0, 1], [1, 2]]


def test_out_of_range_endpoint_rejected():
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph(3, [(-1, 2)])


def test_edge_to_dead_vertex_rejected():
    with pytest.raises(ValueError):
        Graph(3, [(0, 1)], alive=[True, False, True])


def test_tombstoned_vertices_keep_ids():
    g = Graph(5, [(0, 4)], alive=[True, False, False, False, True])
    assert g.num_live == 2
    assert g.live_vertices().tolist() == [0, 4]
    assert g.isolated_live().tolist() == []
    h = g.with_alive([True, False, True, False, True])
    assert h.isolated_live().tolist() == [2]
    assert h.csr() is g.csr()


def test_mapped_contracts_and_normalizes():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    target = np.array([0, 0, 2, 2])
    h = g.mapped(target, alive=[True, False, True, False])
    assert h.edges.tolist() == [[0, 2]]


def test_arrays_are_read_only():
    g = Graph(3, [(0, 1)])
    with pytest.raises(ValueError):
        g.edges[0, 0] = 2
    with pytest.raises(ValueError):
        g.alive[0] = False


def test_equality_and_hash():
    a = Graph(3, [(0, 1), (1, 2)])
    b = Graph.from_edge_list(3, [(2, 1), (1, 0)])
    assert a == b and hash(a) == hash(b)
    assert a != Graph(3, [(0, 1)])


def test_empty_graph():
    g = Graph(5)
    assert g.m == 0 and g.num_live == 5
    assert g.degrees().tolist() == [0] * 5
    assert g.is_normalized()
    assert Graph(0).m == 0

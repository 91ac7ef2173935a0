from __future__ import annotations

import numpy as np
import pytest

from mpcc.errors import InvalidSpec
from mpcc.generators import KINDS, GenSpec, family, generate


def test_path_four():
    g = generate(GenSpec("path", n=4))
    assert g.edges.tolist() == [[0, 1], [1, 2], [2, 3]]


def test_two_cycles_eight():
    g = generate(GenSpec("two_cycles", n=8))
    assert g.edge_set() == {(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)}


def test_star_and_binary_tree():
    assert generate(GenSpec("star", n=4)).edge_set() == {(0, 1), (0, 2), (0, 3)}
    assert generate(GenSpec("full_binary_tree", n=5)).edge_set() == {(0, 1), (0, 2), (1, 3), (1, 4)}


def test_grid_edge_count():
    g = generate(GenSpec("grid_2d", rows=3, cols=4))
    assert g.n == 12 and g.m == 3 * 3 + 2 * 4
    assert g.has_edge(0, 1) and g.has_edge(0, 4) and not g.has_edge(3, 4)


def test_caterpillar_shape():
    g = generate(GenSpec("caterpillar", n=3, legs=2))
    assert g.n == 9 and g.m == 8
    assert g.degrees()[:3].tolist() == [3, 4, 3]


def test_gnm_exact_count_and_determinism():
    a = generate(GenSpec("erdos_renyi_gnm", n=50, m=200, seed=7))
    b = generate(GenSpec("erdos_renyi_gnm", n=50, m=200, seed=7))
    c = generate(GenSpec("erdos_renyi_gnm", n=50, m=200, seed=8))
    assert a.m == 200 and a == b and a != c
    dense = generate(GenSpec("erdos_renyi_gnm", n=10, m=40, seed=1))
    assert dense.m == 40


def test_random_tree_is_spanning_tree():
    g = generate(GenSpec("random_tree", n=300, seed=3))
    assert g.m == 299
    from mpcc.oracles import oracle_components
    assert oracle_components(g).num_components() == 1


def test_disjoint_union_offsets():
    spec = GenSpec("disjoint_union", parts=(GenSpec("path", n=3), GenSpec("cycle", n=3)))
    g = generate(spec)
    assert g.n == 6
    assert g.edge_set() == {(0, 1), (1, 2), (3, 4), (4, 5), (3, 5)}


@pytest.mark.parametrize("spec", [
    GenSpec("cycle", n=2),
    GenSpec("two_cycles", n=7),
    GenSpec("path", n=0),
    GenSpec("erdos_renyi_gnm", n=4, m=7),
    GenSpec("grid_2d", rows=0, cols=3),
    GenSpec("disjoint_union"),
    GenSpec("hypercube", n=8),
])
def test_invalid_specs(spec):
    with pytest.raises(InvalidSpec):
        generate(spec)


@pytest.mark.parametrize("kind", [k for k in KINDS if k != "disjoint_union"])
def test_family_helper_is_deterministic(kind):
    a = family(kind, 64, seed=5)
    b = family(kind, 64, seed=5)
    assert a == b
    assert np.all(a.edges[:, 0] < a.edges[:, 1])

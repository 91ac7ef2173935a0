from __future__ import annotations

import numpy as np
import pytest

from mpcc.errors import InvalidInput
from mpcc.generators import GenSpec, generate
from mpcc.graph import Graph
from mpcc.io import read_edge_list, read_pairs, write_edge_list, write_pairs


def test_edge_list_round_trip(tmp_path):
    g = generate(GenSpec("erdos_renyi_gnm", n=40, m=90, seed=2))
    p = tmp_path / "g.txt"
    write_edge_list(g, p)
    assert read_edge_list(p) == g


def test_header_keeps_isolated_tail(tmp_path):
    p = tmp_path / "g.txt"
    write_edge_list(Graph(6, [(0, 1)]), p)
    g = read_edge_list(p)
    assert g.n == 6 and g.m == 1


def test_without_header_and_with_noise(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# comment\n\n1 0\n0 1\n2 2\n3 1\n")
    g = read_edge_list(p)
    assert g.n == 4
    assert g.edges.tolist() == [[0, 1], [1, 3]]


@pytest.mark.parametrize("text", ["0 1 2\n", "a b\n", "0 -1\n", "# n=2\n0 5\n", "# n=x\n0 1\n"])
def test_bad_inputs(tmp_path, text):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    with pytest.raises(InvalidInput):
        read_edge_list(p)


def test_pairs_round_trip(tmp_path):
    p = tmp_path / "labels.txt"
    vals = np.array([0, 0, 2, 0])
    write_pairs(p, vals)
    assert p.read_text() == "0 0\n1 0\n2 2\n3 0\n"
    assert read_pairs(p).tolist() == vals.tolist()
    p.write_text("1 0\n")
    with pytest.raises(InvalidInput):
        read_pairs(p)

import numpy as np
import pytest

from clusterbench.generators import gen_lfr, gen_simple, gen_wlfr
from clusterbench.graph import Clustering, build_graph
from clusterbench.io import FormatError, read_clustering, read_edge_list, write_clustering, write_edge_list


def _write(tmp_path, text, name="g.edges"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_read_path_graph(tmp_path):
    g = read_edge_list(_write(tmp_path, "0 1\n1 2\n"))
    assert g == build_graph([(0, 1), (1, 2)])


def test_read_weighted_edge(tmp_path):
    g = read_edge_list(_write(tmp_path, "0 1 2.5\n"), weighted=True)
    assert g.neighbor_weights(0).tolist() == [2.5]


def test_comments_and_blank_lines(tmp_path):
    g = read_edge_list(_write(tmp_path, "# header\n\n5 7\n  # indented comment\n7 9\n"))
    assert g.vertex_ids.tolist() == [5, 7, 9] and g.m == 2


@pytest.mark.parametrize("text", ["0\n", "0 1 2 3\n", "-1 2\n", "a b\n", "0 1 heavy\n"])
def test_malformed_lines(tmp_path, text):
    with pytest.raises(FormatError):
        read_edge_list(_write(tmp_path, text), weighted=True)


def test_strict_mode_rejects_duplicates(tmp_path):
    p = _write(tmp_path, "0 1\n1 0\n")
    assert read_edge_list(p).m == 1
    with pytest.raises(ValueError):
        read_edge_list(p, strict=True)


@pytest.mark.parametrize(
    "make",
    [
        lambda: gen_simple(4, 8, 3, 1, seed=2).graph,
        lambda: gen_lfr(128, 16, 32, 0.3, seed=1).graph,
        lambda: gen_wlfr(128, 16, 32, 0.3, 0.2, seed=1).graph,
        lambda: build_graph([(0, 1), (2, 1)], directed=True, nodes=[0, 1, 2, 9]),
    ],
)
def test_round_trip(tmp_path, make):
    g = make()
    p = tmp_path / "rt.edges"
    write_edge_list(g, p)
    back = read_edge_list(p, directed=g.directed, weighted=g.weighted)
    assert back == g


def test_isolated_vertices_survive(tmp_path):
    g = build_graph([(0, 1)], nodes=[0, 1, 2, 3])
    p = tmp_path / "iso.edges"
    write_edge_list(g, p)
    assert read_edge_list(p).n == 4


def test_clustering_round_trip_overlapping(tmp_path):
    c = Clustering([[0], [0, 1], [1]], vertex_ids=[4, 8, 15])
    p = tmp_path / "c.clu"
    write_clustering(c, p)
    back = read_clustering(p)
    assert back.vertex_ids.tolist() == [4, 8, 15]
    assert back.memberships == c.memberships


def test_read_clustering_aligns_to_graph(tmp_path):
    g = build_graph([(3, 5), (5, 8)])
    p = _write(tmp_path, "8 b\n3 a\n5 a\n", "c.clu")
    c = read_clustering(p, graph=g)
    assert c.vertex_ids.tolist() == [3, 5, 8]
    assert c.labels[0] == c.labels[1] != c.labels[2]


def test_read_clustering_missing_vertex(tmp_path):
    g = build_graph([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        read_clustering(_write(tmp_path, "0 1\n1 1\n", "c.clu"), graph=g)

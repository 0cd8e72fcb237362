import numpy as np
import pytest

import oracles
from clusterbench.graph import build_graph
from clusterbench.props import centralities, clustering_coefficients, density, diameters, eccentricity, profile


def complete(n):
    return build_graph([(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n):
    return build_graph([(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return build_graph([(0, i) for i in range(1, leaves + 1)])


def random_graph(rng, n, p):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(edges, nodes=range(n)), edges


def test_density_examples():
    assert density(complete(4)) == 1.0
    assert density(build_graph([], nodes=range(5))) == 0.0
    assert density(path(3)) == pytest.approx(4 / 6)
    with pytest.raises(ValueError):
        density(build_graph([], nodes=[0]))


def test_diameter_examples():
    assert diameters(path(4))[0] == 3
    assert diameters(complete(5)) == (1, 1.0)
    # star with 9 leaves: 18 ordered pairs at distance 1, 72 at distance 2
    assert diameters(star(9)) == (2, 2.0)


def test_effective_diameter_matches_bfs_oracle():
    rng = np.random.default_rng(4)
    for _ in range(10):
        g, edges = random_graph(rng, 25, 0.12)
        dist = oracles.all_distances(oracles.adjacency_sets(25, edges))
        diam, eff = diameters(g)
        assert diam == max(dist)
        assert eff == pytest.approx(np.percentile(dist, 90))


def test_sampled_effective_diameter_close_to_exact():
    rng = np.random.default_rng(8)
    g, _ = random_graph(rng, 400, 0.01)
    exact = diameters(g)[1]
    sampled = diameters(g, sample_size=64, seed=3, exact_threshold=100)[1]
    assert abs(exact - sampled) <= 0.5


def test_star_centralities():
    c = centralities(star(4))
    assert c["degree_centrality"][0] == 1.0
    assert c["farness"][0] == 1.0
    assert c["farness"][1] == pytest.approx(1.75)


def test_closeness_times_farness_is_one():
    rng = np.random.default_rng(2)
    g, _ = random_graph(rng, 30, 0.1)
    c = centralities(g)
    live = g.degrees > 0
    assert np.allclose(c["closeness"][live] * c["farness"][live], 1.0)
    assert (c["closeness"][~live] == 0).all()


def test_eccentricity_examples():
    p4 = path(4)
    assert eccentricity(p4, 0) == 3 and eccentricity(p4, 1) == 2
    c6 = build_graph([(i, (i + 1) % 6) for i in range(6)])
    assert all(eccentricity(c6, v) == 3 for v in range(6))
    assert centralities(complete(3))["eccentricity"].tolist() == [1, 1, 1]
    with pytest.raises((KeyError, IndexError, ValueError)):
        eccentricity(p4, 9)


def test_clustering_coefficient_examples():
    glob, local = clustering_coefficients(complete(4))
    assert glob == 1.0 and (local == 1.0).all()
    assert clustering_coefficients(star(5))[0] == 0.0
    tri_pendant = build_graph([(0, 1), (1, 2), (2, 0), (2, 3)])
    assert clustering_coefficients(tri_pendant)[0] == pytest.approx(0.6)
    with pytest.raises(ValueError):
        clustering_coefficients(build_graph([(0, 1)], directed=True))


def test_global_cc_matches_triple_enumeration():
    rng = np.random.default_rng(10)
    for _ in range(5):
        g, edges = random_graph(rng, 40, 0.15)
        expected = oracles.global_cc_by_triples(oracles.adjacency_sets(40, edges))
        assert clustering_coefficients(g)[0] == pytest.approx(expected, abs=1e-12)


def test_profile_invariants():
    rng = np.random.default_rng(6)
    g, _ = random_graph(rng, 50, 0.08)
    p = profile(g)
    assert 0 <= p.density <= 1
    assert p.effective_diameter <= p.diameter
    assert 0 <= p.global_cc <= 1 and ((p.local_cc >= 0) & (p.local_cc <= 1)).all()
    assert (p.eccentricity <= p.diameter).all()

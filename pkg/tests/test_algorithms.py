import itertools
import math

import numpy as np
import pytest

import oracles
from clusterbench.algorithms import (
    ALGORITHMS,
    gce_expand,
    gce_fitness,
    get_algorithm,
    greedy_cnm,
    louvain,
    lpa,
    map_equation_codelength,
    maximal_cliques,
    visit_rates,
)
from clusterbench.fitness import modularity
from clusterbench.generators import gen_lfr, gen_simple
from clusterbench.graph import Clustering, build_graph, crispify
from clusterbench.scores import nmi

TWO_TRIANGLES = build_graph([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
TWO_TRIANGLES_TRUTH = Clustering.from_labels([0, 0, 0, 1, 1, 1])


def clique_edges(vertices):
    return list(itertools.combinations(vertices, 2))


TWO_K4 = build_graph(clique_edges(range(4)) + clique_edges(range(4, 8)))


def triangles(g):
    adj = [set(g.neighbors(v).tolist()) for v in range(g.n)]
    return [t for t in itertools.combinations(range(g.n), 3) if t[1] in adj[t[0]] and t[2] in adj[t[0]] and t[2] in adj[t[1]]]


def test_lpa_two_triangles():
    for seed in range(5):
        assert nmi(TWO_TRIANGLES_TRUTH, lpa(TWO_TRIANGLES, seed=seed)) == 1.0


def test_lpa_edgeless_gives_singletons():
    c = lpa(build_graph([], nodes=range(5)))
    assert c.k == 5


def test_lpa_easy_planted_partition():
    scores = [nmi(inst.truth, lpa(inst.graph, seed=s)) for s in range(10) for inst in [gen_simple(8, 16, 6, 1, seed=s)]]
    assert np.median(scores) >= 0.9


def test_louvain_two_k4():
    c = louvain(TWO_K4, seed=3)
    assert c.same_partition(Clustering.from_labels([0] * 4 + [1] * 4))
    assert modularity(TWO_K4, c) == pytest.approx(0.5)
    edges = clique_edges(range(4)) + clique_edges(range(4, 8))
    _, best_q = oracles.best_modularity_partition(8, edges)
    assert best_q == pytest.approx(0.5)


def test_louvain_complete_graph_not_below_singletons():
    k6 = build_graph(clique_edges(range(6)))
    singles = modularity(k6, Clustering.from_labels(range(6)))
    assert modularity(k6, louvain(k6)) >= max(singles, 0.0) - 1e-12


def test_louvain_recovers_lfr_communities():
    scores = []
    for s in range(5):
        inst = gen_lfr(1024, 256, 512, 0.2, seed=s)
        scores.append(nmi(inst.truth, louvain(inst.graph, seed=s)))
    assert np.median(scores) >= 0.9


def test_louvain_weighted_input():
    g = build_graph([(0, 1, 5.0), (1, 2, 5.0), (2, 0, 5.0), (2, 3, 0.1), (3, 4, 5.0), (4, 5, 5.0), (5, 3, 5.0)], weighted=True)
    assert louvain(g).same_partition(TWO_TRIANGLES_TRUTH)


def test_cnm_examples():
    c = greedy_cnm(TWO_TRIANGLES)
    assert c.same_partition(TWO_TRIANGLES_TRUTH)
    assert modularity(TWO_TRIANGLES, c) == pytest.approx(0.5)
    assert greedy_cnm(build_graph([(0, 1)])).k == 1


def test_cnm_star_matches_exhaustive_search():
    edges = [(0, i) for i in range(1, 6)]
    g = build_graph(edges)
    _, best_q = oracles.best_modularity_partition(6, edges)
    assert modularity(g, greedy_cnm(g)) == pytest.approx(best_q, abs=1e-12)


def test_cnm_deterministic_and_not_below_singletons():
    inst = gen_simple(4, 8, 3, 1, seed=0)
    a, b = greedy_cnm(inst.graph), greedy_cnm(inst.graph)
    assert a == b
    assert modularity(inst.graph, a) >= modularity(inst.graph, Clustering.from_labels(range(inst.graph.n)))


def test_gce_fitness_examples():
    k4 = build_graph(clique_edges(range(4)))
    assert gce_fitness(k4, range(4)) == 1.0
    # a triangle with two pendant edges hanging off one corner: k_in = 6, k_out = 2
    g = build_graph([(0, 1), (1, 2), (2, 0), (0, 3), (0, 4)])
    assert gce_fitness(g, [0, 1, 2]) == pytest.approx(0.75)
    assert gce_fitness(g, [0, 1, 2], alpha=2.0) == pytest.approx(6 / 64)
    with pytest.raises(ValueError):
        gce_fitness(g, [])


def test_gce_empty_seed_rejected():
    with pytest.raises(ValueError):
        gce_expand(TWO_K4, seed_cliques=[[0, 1, 2], []])
    with pytest.raises(ValueError):
        gce_expand(TWO_K4, alpha=0)


def test_gce_triangle_seed_fills_clique_clusters():
    inst = gen_simple(4, 8, 7, 0, seed=0)
    for tri in [(0, 1, 2), (8, 12, 15), (25, 27, 30)]:
        comm = set(gce_expand(inst.graph, [tri]).clusters[0].tolist())
        assert comm == set(inst.truth.clusters[inst.truth.labels[tri[0]]].tolist())


def test_gce_triangle_seed_stays_inside_sparse_cluster():
    # 3-regular clusters: greedy growth may stall early but never crosses over
    inst = gen_simple(4, 8, 3, 0, seed=0)
    g, labels = inst.graph, inst.truth.labels
    for tri in triangles(g):
        comm = gce_expand(g, [tri]).clusters[0].tolist()
        assert len({labels[v] for v in comm}) == 1
        assert gce_fitness(g, comm) >= gce_fitness(g, tri)


def test_gce_default_seeds_and_duplicates():
    c = gce_expand(TWO_K4)
    assert c.k == 2 and [x.tolist() for x in c.clusters] == [[0, 1, 2, 3], [4, 5, 6, 7]]
    # the same clique twice collapses to one community
    assert gce_expand(TWO_K4, [[0, 1, 2], [0, 1, 3], [4, 5, 6]]).k == 2
    assert len(maximal_cliques(TWO_K4)) == 2


def test_gce_overlapping_output():
    # two K6 sharing vertex 5: growing either clique by one vertex lowers fitness
    g = build_graph(clique_edges(range(6)) + clique_edges(range(5, 11)))
    c = gce_expand(g)
    assert c.overlapped and c.memberships[5] == (0, 1)
    assert [x.tolist() for x in c.clusters] == [list(range(6)), list(range(5, 11))]


def test_map_equation_single_module_is_visit_entropy():
    inst = gen_simple(4, 8, 3, 1, seed=1)
    p = visit_rates(inst.graph)
    one = Clustering.from_labels(np.zeros(inst.graph.n, dtype=int))
    assert map_equation_codelength(inst.graph, one) == pytest.approx(-(p * np.log2(p)).sum(), abs=1e-12)


def test_map_equation_disconnected_cliques():
    c = Clustering.from_labels([0] * 4 + [1] * 4)
    # no flow leaves either clique; each module codes 4 equally likely vertices (2 bits)
    assert map_equation_codelength(TWO_K4, c, teleport=0) == pytest.approx(2.0)


def test_map_equation_prefers_truth_over_singletons():
    inst = gen_lfr(128, 32, 64, 0.1, seed=0)
    singles = Clustering.from_labels(range(inst.graph.n))
    truth_len = map_equation_codelength(inst.graph, inst.truth)
    assert 0 < truth_len < map_equation_codelength(inst.graph, singles)


def test_map_equation_teleport_stability():
    for inst in [gen_lfr(128, 32, 64, 0.1, seed=0), gen_simple(4, 8, 3, 1, seed=0)]:
        assert abs(
            map_equation_codelength(inst.graph, inst.truth) - map_equation_codelength(inst.graph, inst.truth, teleport=0)
        ) < 0.05


def test_visit_rates_sum_to_one():
    p = visit_rates(build_graph([(0, 1), (1, 2)], directed=True))
    assert p.sum() == pytest.approx(1.0) and (p > 0).all()


@pytest.mark.parametrize("name", ["lpa", "louvain"])
def test_seeded_determinism(name):
    inst = gen_lfr(256, 16, 32, 0.3, seed=1)
    alg = get_algorithm(name)
    assert alg.run(inst.graph, seed=4) == alg.run(inst.graph, seed=4)


@pytest.mark.parametrize("name", sorted(ALGORITHMS))
def test_outputs_are_valid_clusterings(name):
    inst = gen_simple(4, 8, 3, 2, seed=2)
    c = get_algorithm(name).run(inst.graph, seed=0)
    assert c.n == inst.graph.n
    covered = sorted(v for cl in c.clusters for v in cl.tolist())
    assert set(covered) == set(range(inst.graph.n))
    if not ALGORITHMS[name].capabilities.overlapping:
        assert not c.overlapped and len(covered) == inst.graph.n
    assert crispify(c, 0).k >= 1


def test_unknown_algorithm():
    with pytest.raises(KeyError):
        get_algorithm("oslom")


def test_handle_adapts_directed_input():
    g = build_graph([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], directed=True)
    assert get_algorithm("louvain").run(g).same_partition(TWO_TRIANGLES_TRUTH)
    assert math.isfinite(modularity(TWO_TRIANGLES, get_algorithm("cnm").run(TWO_TRIANGLES)))

import math

import numpy as np
import pytest

import oracles
from clusterbench.graph import Clustering
from clusterbench.scores import (
    all_scores,
    ami,
    contingency,
    expected_mutual_information,
    mutual_information,
    nmi,
    rand_scores,
    v_measure,
)

HALVES = Clustering.from_labels([0, 0, 1, 1])
CROSSED = Clustering.from_labels([0, 1, 0, 1])
ONE = Clustering.from_labels([0, 0, 0, 0])
SPLIT_TAIL = Clustering.from_labels([0, 0, 1, 2])


def test_contingency_examples():
    assert contingency(HALVES, HALVES).counts.tolist() == [[2, 0], [0, 2]]
    assert contingency(HALVES, CROSSED).counts.tolist() == [[1, 1], [1, 1]]
    assert contingency(HALVES, ONE).counts.tolist() == [[2], [2]]
    t = contingency(HALVES, SPLIT_TAIL)
    assert t.total == 4 and t.row_sums.tolist() == [2, 2] and t.col_sums.tolist() == [2, 1, 1]


def test_contingency_rejects_mismatch():
    with pytest.raises(ValueError):
        contingency(HALVES, Clustering.from_labels([0, 1, 1]))
    with pytest.raises(ValueError):
        contingency(HALVES, Clustering.from_labels([0, 0, 1, 1], vertex_ids=[0, 1, 2, 9]))
    with pytest.raises(ValueError):
        contingency(HALVES, Clustering([[0], [0, 1], [1], [1]]))


def test_mutual_information_examples():
    assert mutual_information(HALVES, HALVES) == pytest.approx(math.log(2))
    assert mutual_information(HALVES, CROSSED) == pytest.approx(0.0, abs=1e-15)
    assert mutual_information(HALVES, ONE) == 0.0


def test_nmi_examples():
    assert nmi(HALVES, HALVES) == 1.0
    assert nmi(HALVES, CROSSED) == pytest.approx(0.0, abs=1e-15)
    a, b = [0, 0, 1, 1], [0, 0, 1, 2]
    assert nmi(HALVES, SPLIT_TAIL) == pytest.approx(oracles.nmi(a, b), abs=1e-12)
    # ln2 shared, entropies ln2 and 1.5 ln2
    assert nmi(HALVES, SPLIT_TAIL) == pytest.approx(0.8)


def test_nmi_degenerate_rules():
    assert nmi(ONE, ONE) == 1.0
    assert nmi(ONE, HALVES) == 0.0 and nmi(HALVES, ONE) == 0.0


def test_ami_examples():
    assert ami(HALVES, HALVES) == 1.0
    emi = oracles.expected_mi([0, 0, 1, 1], [0, 1, 0, 1])
    assert expected_mutual_information([2, 2], [2, 2]) == pytest.approx(emi, abs=1e-12)
    assert ami(HALVES, CROSSED) == pytest.approx((0 - emi) / (math.log(2) - emi), abs=1e-12)
    assert ami(ONE, ONE) == 1.0
    assert ami(ONE, HALVES) == 0.0


def test_ami_large_marginals_stay_finite():
    rng = np.random.default_rng(0)
    a = Clustering.from_labels(rng.integers(0, 20, 100_000))
    b = Clustering.from_labels(rng.integers(0, 20, 100_000))
    value = ami(a, b)
    assert math.isfinite(value) and abs(value) < 0.01


def test_rand_examples():
    assert rand_scores(HALVES, HALVES) == (1.0, 1.0)
    ri, ars = rand_scores(HALVES, CROSSED)
    assert ri == pytest.approx(1 / 3) and ars == pytest.approx(-0.5)
    assert ri == pytest.approx(oracles.rand_index([0, 0, 1, 1], [0, 1, 0, 1]))
    with pytest.raises(ValueError):
        rand_scores(Clustering.from_labels([0]), Clustering.from_labels([0]))


def test_rand_degenerate_rule():
    assert rand_scores(ONE, ONE)[1] == 1.0
    singletons = Clustering.from_labels([0, 1, 2, 3])
    assert rand_scores(singletons, singletons)[1] == 1.0
    assert rand_scores(ONE, singletons)[1] == 0.0


def test_v_measure_modes():
    assert v_measure(HALVES, HALVES) == (1.0, 1.0, 1.0)
    assert v_measure(HALVES, HALVES, standard=False)[2] == 0.5
    h, c, _ = v_measure(HALVES, Clustering.from_labels([0, 1, 2, 3]))
    assert h == 1.0 and 0 < c < 1
    h, c, v = v_measure(HALVES, ONE)
    assert (h, c, v) == (0.0, 1.0, 0.0)


def test_v_measure_against_conditional_entropy_oracle():
    truth, pred = [0, 0, 0, 1, 1, 2, 2, 2], [0, 0, 1, 1, 1, 2, 2, 0]
    h, c, v = v_measure(Clustering.from_labels(truth), Clustering.from_labels(pred))
    assert h == pytest.approx(oracles.homogeneity(truth, pred), abs=1e-12)
    assert c == pytest.approx(oracles.completeness(truth, pred), abs=1e-12)
    assert v == pytest.approx(oracles.v_measure(truth, pred), abs=1e-12)


def test_symmetry_and_relabel_invariance():
    rng = np.random.default_rng(3)
    for _ in range(20):
        la, lb = rng.integers(0, 4, 30), rng.integers(0, 5, 30)
        a, b = Clustering.from_labels(la), Clustering.from_labels(lb)
        relabeled = Clustering.from_labels(rng.permutation(10)[lb])
        for f in (mutual_information, nmi, ami):
            assert f(a, b) == pytest.approx(f(b, a), abs=1e-12)
        assert rand_scores(a, b) == pytest.approx(rand_scores(b, a), abs=1e-12)
        assert all_scores(a, b) == pytest.approx(all_scores(a, relabeled), abs=1e-12)


def test_all_scores_keys_and_label_arrays():
    s = all_scores(HALVES, SPLIT_TAIL)
    assert set(s) == {"mi", "nmi", "ami", "ri", "ars", "homogeneity", "completeness", "v_measure"}
    assert all_scores([0, 0, 1, 1], [0, 0, 1, 2]) == s
    assert all_scores(HALVES, HALVES, standard_v=False)["v_measure"] == 0.5

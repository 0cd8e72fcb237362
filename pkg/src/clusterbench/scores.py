"""Comparison of a clustering against ground truth.

All scores take crisp :class:`~clusterbench.graph.Clustering` objects over
the same vertex universe (crispify overlapping ones first). Logarithms are
natural, so mutual information and entropies are in nats; the normalized
scores do not depend on the base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .graph import Clustering

# entropies closer than this count as equal when deciding degenerate cases
_EPS = 1e-12


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _labels(c) -> np.ndarray:
    if isinstance(c, Clustering):
        return c.labels
    return np.asarray(c)


def contingency(a, b) -> ContingencyTable:
    """Overlap counts ``|A_i & B_j|``. Accepts clusterings or label arrays."""
    if isinstance(a, Clustering) and isinstance(b, Clustering):
        if not np.array_equal(a.vertex_ids, b.vertex_ids):
            raise ValueError("clusterings are over different vertex sets")
    la, lb = _labels(a), _labels(b)
    if len(la) != len(lb):
        raise ValueError(f"clusterings cover {len(la)} and {len(lb)} vertices")
    _, ia = np.unique(la, return_inverse=True)
    _, ib = np.unique(lb, return_inverse=True)
    ra, rb = ia.max() + 1 if len(ia) else 0, ib.max() + 1 if len(ib) else 0
    counts = np.bincount(ia.ravel() * rb + ib.ravel(), minlength=ra * rb).reshape(ra, rb)
    return ContingencyTable(counts.astype(np.int64))


def _table(a, b) -> ContingencyTable:
    return a if isinstance(a, ContingencyTable) else contingency(a, b)


def entropy(sizes: np.ndarray) -> float:
    sizes = np.asarray(sizes, dtype=np.float64)
    n = sizes.sum()
    p = sizes[sizes > 0] / n
    return float(-(p * np.log(p)).sum())


def _mi_from_counts(counts: np.ndarray) -> float:
    n = counts.sum()
    if n == 0:
        raise ValueError("empty clustering")
    a = counts.sum(axis=1).astype(np.float64)
    b = counts.sum(axis=0).astype(np.float64)
    i, j = np.nonzero(counts)
    nij = counts[i, j].astype(np.float64)
    mi = (nij / n) * (np.log(nij) + math.log(n) - np.log(a[i]) - np.log(b[j]))
    return max(float(mi.sum()), 0.0)


def mutual_information(a, b=None) -> float:
    """Mutual information in nats."""
    return _mi_from_counts(_table(a, b).counts)


def nmi(a, b=None) -> float:
    """``2 MI / (H(A) + H(B))``; 1 if both entropies vanish, 0 if only one does."""
    t = _table(a, b)
    ha, hb = entropy(t.row_sums), entropy(t.col_sums)
    if ha < _EPS and hb < _EPS:
        return 1.0
    if ha < _EPS or hb < _EPS:
        return 0.0
    if _identical(t.counts):
        return 1.0  # exact, free of log round-off
    return min(2.0 * _mi_from_counts(t.counts) / (ha + hb), 1.0)


@numba.njit(cache=True)
def _emi_kernel(a, b, n):
    lg_a = np.empty(len(a))
    lg_na = np.empty(len(a))
    for i in range(len(a)):
        lg_a[i] = math.lgamma(a[i] + 1.0)
        lg_na[i] = math.lgamma(n - a[i] + 1.0)
    lg_b = np.empty(len(b))
    lg_nb = np.empty(len(b))
    for j in range(len(b)):
        lg_b[j] = math.lgamma(b[j] + 1.0)
        lg_nb[j] = math.lgamma(n - b[j] + 1.0)
    lg_n = math.lgamma(n + 1.0)
    log_n = math.log(n)
    total = 0.0
    comp = 0.0
    for i in range(len(a)):
        ai = a[i]
        for j in range(len(b)):
            bj = b[j]
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            base = lg_a[i] + lg_b[j] + lg_na[i] + lg_nb[j] - lg_n
            log_ab = math.log(ai) + math.log(bj)
            for nij in range(lo, hi + 1):
                log_p = (
                    base
                    - math.lgamma(nij + 1.0)
                    - math.lgamma(ai - nij + 1.0)
                    - math.lgamma(bj - nij + 1.0)
                    - math.lgamma(n - ai - bj + nij + 1.0)
                )
                term = (nij / n) * (log_n + math.log(nij) - log_ab) * math.exp(log_p)
                # Kahan summation
                y = term - comp
                t = total + y
                comp = (t - total) - y
                total = t
    return total


def expected_mutual_information(row_sums, col_sums) -> float:
    """Expected MI under the hypergeometric model with fixed marginals."""
    a = np.asarray(row_sums, dtype=np.int64)
    b = np.asarray(col_sums, dtype=np.int64)
    a, b = a[a > 0], b[b > 0]
    n = int(a.sum())
    if len(a) <= 1 or len(b) <= 1:
        return 0.0
    return float(_emi_kernel(a, b, n))


def ami(a, b=None) -> float:
    """Adjusted mutual information with arithmetic-mean normalization.

    When the denominator vanishes the result is 1 for identical partitions and
    0 otherwise. Identical partitions always score exactly 1.
    """
    t = _table(a, b)
    if _identical(t.counts):
        return 1.0
    ha, hb = entropy(t.row_sums), entropy(t.col_sums)
    mi = _mi_from_counts(t.counts)
    emi = expected_mutual_information(t.row_sums, t.col_sums)
    denom = (ha + hb) / 2 - emi
    if abs(denom) < _EPS * max(1.0, ha + hb):
        return 1.0 if _identical(t.counts) else 0.0
    return (mi - emi) / denom


def _identical(counts: np.ndarray) -> bool:
    """Whether the table describes two equal partitions (one nonzero per row and column)."""
    nz = counts > 0
    return bool((nz.sum(axis=1) == 1).all() and (nz.sum(axis=0) == 1).all())


def _comb2(x):
    x = np.asarray(x, dtype=np.float64)
    return x * (x - 1) / 2


def rand_scores(a, b=None) -> tuple[float, float]:
    """Rand index and adjusted Rand index by pair counting."""
    t = _table(a, b)
    n = t.total
    if n < 2:
        raise ValueError("pair counting needs at least two vertices")
    pairs = n * (n - 1) / 2
    same_both = _comb2(t.counts).sum()
    same_a = _comb2(t.row_sums).sum()
    same_b = _comb2(t.col_sums).sum()
    ri = (pairs + 2 * same_both - same_a - same_b) / pairs
    expected = same_a * same_b / pairs
    denom = (same_a + same_b) / 2 - expected
    ri = float(ri)
    if denom == 0:
        return ri, 1.0 if _identical(t.counts) else 0.0
    return ri, float((same_both - expected) / denom)


def adjusted_rand(a, b=None) -> float:
    return rand_scores(a, b)[1]


def _conditional_entropy(counts: np.ndarray, axis: int) -> float:
    """H(X | Y) where Y indexes ``axis`` of ``counts``."""
    n = counts.sum()
    given = counts.sum(axis=axis, keepdims=True).astype(np.float64)
    nz = counts > 0
    c = counts.astype(np.float64)
    g = np.broadcast_to(given, counts.shape)
    return float(-(c[nz] / n * np.log(c[nz] / g[nz])).sum())


def v_measure(truth, c=None, standard: bool = True) -> tuple[float, float, float]:
    """Homogeneity, completeness and V-measure of ``c`` against ``truth``.

    ``standard`` uses the harmonic mean ``2hc/(h+c)``; ``standard=False``
    gives ``hc/(h+c)`` without the factor two.
    """
    t = _table(truth, c)
    h_truth, h_pred = entropy(t.row_sums), entropy(t.col_sums)
    h = 1.0 if h_truth < _EPS else 1.0 - _conditional_entropy(t.counts, axis=0) / h_truth
    cpl = 1.0 if h_pred < _EPS else 1.0 - _conditional_entropy(t.counts, axis=1) / h_pred
    if h + cpl == 0:
        return h, cpl, 0.0
    v = h * cpl / (h + cpl)
    return h, cpl, 2 * v if standard else v


SCORE_NAMES = ("mi", "nmi", "ami", "ri", "ars", "homogeneity", "completeness", "v_measure")


def all_scores(truth, pred=None, standard_v: bool = True) -> dict[str, float]:
    """Every score in :data:`SCORE_NAMES` from one contingency table."""
    t = _table(truth, pred)
    ri, ars = rand_scores(t) if t.total >= 2 else (float("nan"), float("nan"))
    h, c, v = v_measure(t, standard=standard_v)
    return {
        "mi": mutual_information(t),
        "nmi": nmi(t),
        "ami": ami(t),
        "ri": ri,
        "ars": ars,
        "homogeneity": h,
        "completeness": c,
        "v_measure": v,
    }

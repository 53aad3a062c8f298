"""Divergences between discrete probability distributions.

All logarithms are base two and ``0 log 0 = 0``.
"""
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidDistribution, LengthMismatch

PROB_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ProbDist:
    weights: np.ndarray

    def __len__(self):
        return self.weights.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.weights, dtype=dtype)


def make_probdist(weights) -> ProbDist:
    w = np.array(weights, dtype=float).reshape(-1)
    if w.size == 0:
        raise InvalidDistribution("distribution is empty")
    if not np.all(np.isfinite(w)):
        raise InvalidDistribution("distribution has non-finite entries")
    if np.any(w < 0):
        raise InvalidDistribution(f"negative probability {w.min():.3e}", float(w.min()))
    s = float(w.sum())
    if abs(s - 1.0) > PROB_TOL:
        raise InvalidDistribution(f"probabilities sum to {s:.12g}", s - 1.0)
    w.setflags(write=False)
    return ProbDist(w)


def as_probdist(p) -> ProbDist:
    return p if isinstance(p, ProbDist) else make_probdist(p)


def _pair(p, q):
    p, q = as_probdist(p), as_probdist(q)
    if len(p) != len(q):
        raise LengthMismatch(f"distributions have lengths {len(p)} and {len(q)}")
    return p.weights, q.weights


def shannon_entropy(p) -> float:
    w = as_probdist(p).weights
    w = w[w > 0]
    return float(-np.sum(w * np.log2(w)))


def kl_divergence(p, q) -> float:
    """Kullback-Leibler divergence; ``math.inf`` when supp(p) is not inside supp(q)."""
    p, q = _pair(p, q)
    on = p > 0
    if np.any(q[on] == 0):
        return math.inf
    return float(np.sum(p[on] * (np.log2(p[on]) - np.log2(q[on]))))


def kolmogorov_distance(p, q) -> float:
    p, q = _pair(p, q)
    return 0.5 * float(np.sum(np.abs(p - q)))


def hellinger_classical(p, q) -> float:
    p, q = _pair(p, q)
    return float(np.sum((np.sqrt(p) - np.sqrt(q)) ** 2))


def classical_jsd(p, q) -> float:
    """Jensen-Shannon divergence H(M) - H(P)/2 - H(Q)/2 with M = (P + Q)/2.

    Bounded in [0, 1] bits. The midpoint is formed as ``0.5 * (p + q)`` so the
    value does not depend on argument order.
    """
    p, q = _pair(p, q)
    m = 0.5 * (p + q)
    return _entropy(m) - 0.5 * (_entropy(p) + _entropy(q))


def _entropy(w: np.ndarray) -> float:
    w = w[w > 0]
    return float(-np.sum(w * np.log2(w)))


def generalized_jsd(distributions: Sequence, weights) -> float:
    """Weighted JSD: H(sum_i pi_i P_i) - sum_i pi_i H(P_i)."""
    pi = as_probdist(weights).weights
    dists = [as_probdist(p).weights for p in distributions]
    if len(dists) != pi.size:
        raise LengthMismatch(f"{len(dists)} distributions but {pi.size} weights")
    n = dists[0].size
    if any(d.size != n for d in dists):
        raise LengthMismatch("distributions have different lengths")
    stack = np.stack(dists)
    mixture = pi @ stack
    return _entropy(mixture) - float(sum(w * _entropy(d) for w, d in zip(pi, dists)))

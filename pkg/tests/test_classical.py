import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from qjsd.classical import (
    classical_jsd,
    generalized_jsd,
    hellinger_classical,
    kl_divergence,
    kolmogorov_distance,
    make_probdist,
    shannon_entropy,
)
from qjsd.errors import InvalidDistribution, LengthMismatch

H34 = -(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))  # 0.811278124459


def test_shannon_entropy_values():
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-15)
    assert shannon_entropy([1.0, 0.0]) == 0.0
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-15)


def test_jsd_values():
    assert classical_jsd([1, 0], [0, 1]) == pytest.approx(1.0, abs=1e-15)
    assert classical_jsd([0.5, 0.5], [1, 0]) == pytest.approx(H34 - 0.5, abs=1e-15)
    assert classical_jsd([0.3, 0.7], [0.3, 0.7]) == 0.0


def test_kl_values_and_support_rule():
    assert kl_divergence([0.5, 0.5], [0.25, 0.75]) == pytest.approx(
        0.5 * math.log2(2) + 0.5 * math.log2(2 / 3), abs=1e-15)
    assert kl_divergence([0.5, 0.5], [1.0, 0.0]) == math.inf
    assert kl_divergence([1.0, 0.0], [0.5, 0.5]) == pytest.approx(1.0)


def test_distances():
    assert kolmogorov_distance([0.75, 0.25], [0.25, 0.75]) == pytest.approx(0.5)
    assert hellinger_classical([1, 0], [0, 1]) == pytest.approx(2.0)


def test_validation():
    with pytest.raises(InvalidDistribution):
        make_probdist([0.5, 0.6])
    with pytest.raises(InvalidDistribution):
        make_probdist([1.5, -0.5])
    with pytest.raises(InvalidDistribution):
        make_probdist([])
    with pytest.raises(LengthMismatch):
        classical_jsd([1.0], [0.5, 0.5])


def test_generalized_reduces_to_pairwise():
    p, q = [0.2, 0.3, 0.5], [0.6, 0.1, 0.3]
    assert generalized_jsd([p, q], [0.5, 0.5]) == pytest.approx(classical_jsd(p, q), abs=1e-15)


def test_generalized_orthogonal_saturates():
    d = np.eye(3)
    w = [0.2, 0.3, 0.5]
    assert generalized_jsd(d, w) == pytest.approx(shannon_entropy(w), abs=1e-14)


def dists(n):
    return st.lists(st.floats(0.0, 1.0), min_size=n, max_size=n).filter(lambda x: sum(x) > 1e-3).map(
        lambda x: np.array(x) / sum(x))


@st.composite
def triples(draw):
    n = draw(st.integers(2, 6))
    return draw(dists(n)), draw(dists(n)), draw(dists(n))


@given(triples())
def test_jsd_bounds_symmetry(t):
    p, q, _ = t
    v = classical_jsd(p, q)
    assert -1e-15 <= v <= 1 + 1e-15
    assert v == classical_jsd(q, p)


@given(triples())
def test_sqrt_jsd_triangle(t):
    p, q, r = t
    s = lambda a, b: math.sqrt(max(classical_jsd(a, b), 0.0))  # noqa: E731
    assert s(p, r) <= s(p, q) + s(q, r) + 1e-7


@given(triples())
def test_jsd_below_symmetrized_kl(t):
    p, q, _ = t
    assume(np.all(p > 0) and np.all(q > 0))
    assert classical_jsd(p, q) <= 0.5 * (kl_divergence(p, q) + kl_divergence(q, p)) + 1e-12

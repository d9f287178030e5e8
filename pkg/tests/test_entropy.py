import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signed_entropy import (
    BadAlphaError,
    NegativeComponentError,
    SignedMeasure,
    ZeroWeightError,
    classical_renyi,
    classical_shannon,
    renormalized_entropy,
    signed_renyi,
    signed_renyi_gradient,
    signed_shannon,
)
from signed_entropy.entropy import entropy_function
from signed_entropy.errors import InputError

from .strategies import nonnegative_measures, orders, signed_measures

LN2 = math.log(2)


def central_difference(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    grad = np.empty_like(x)
    for j in range(x.size):
        up, dn = x.copy(), x.copy()
        up[j] += h
        dn[j] -= h
        grad[j] = (f(up) - f(dn)) / (2 * h)
    return grad


# --- signed Renyi -----------------------------------------------------------


@pytest.mark.parametrize("alpha", [0.3, 0.5, 2, 3, 7.5])
def test_signed_renyi_closed_form_on_two_point_measure(alpha):
    expected = -math.log2(2 ** alpha + 1) / (alpha - 1)
    assert signed_renyi([2, -1], alpha) == pytest.approx(expected, rel=1e-13)


def test_signed_renyi_values():
    assert signed_renyi([2, -1], 2) == pytest.approx(-math.log2(5), abs=1e-13)
    assert signed_renyi([-0.3, 0.6, 0.7], 2) == pytest.approx(0.0893, abs=5e-5)
    assert signed_renyi([0.08, 0.45, 0.47], 2) == pytest.approx(1.2183, abs=5e-5)


@pytest.mark.parametrize("alpha", [0.2, 0.5, 2, 3, 7])
def test_calibration_exact(alpha):
    assert signed_renyi([0.5], alpha) == 1.0
    assert signed_renyi([-0.5], alpha) == 1.0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7, 10])
@pytest.mark.parametrize("alpha", [0.5, 2, 3])
def test_uniform_gives_log_n(n, alpha):
    assert signed_renyi([1 / n] * n, alpha) == pytest.approx(math.log2(n), abs=1e-13)


@pytest.mark.parametrize("alpha", [0, -1, 1, 1 + 1e-10, float("nan"), float("inf")])
def test_bad_alpha(alpha):
    with pytest.raises(BadAlphaError):
        signed_renyi([0.5, 0.5], alpha)


def test_zero_component_is_harmless():
    assert signed_renyi([0, 0.5, 0.5], 0.5) == pytest.approx(1.0, abs=1e-14)


def test_large_product_does_not_overflow():
    big = SignedMeasure([1e200, -5e199])
    assert math.isfinite(signed_renyi(big, 3))


# --- Shannon-type and renormalized -------------------------------------------


@pytest.mark.parametrize(
    "values, expected",
    [((2, -1), -2.0), ((4, -2, -2, 1), -12.0), ((0.5,), 1.0), ((0.25,) * 4, 2.0)],
)
def test_signed_shannon_exact(values, expected):
    assert signed_shannon(values) == pytest.approx(expected, abs=1e-12)


def test_signed_shannon_example3():
    assert signed_shannon([0.08, 0.45, 0.47]) == pytest.approx(1.3219, abs=5e-5)
    assert signed_shannon([-0.3, 0.6, 0.7]) == pytest.approx(1.3235, abs=5e-5)


def test_signed_shannon_not_extensive():
    p = SignedMeasure([2, -1])
    assert signed_shannon(p * p) == pytest.approx(-12)
    assert 2 * signed_shannon(p) == pytest.approx(-4)


def test_renormalized_values():
    assert renormalized_entropy([0.2, 0.3, 0.5]) == 0.0
    assert renormalized_entropy([2, -1]) == pytest.approx(-math.log2(3), abs=1e-14)
    prod = [1, -0.5, 1, -0.5]
    assert renormalized_entropy(prod) == pytest.approx(-math.log2(3), abs=1e-14)
    assert renormalized_entropy(prod) == pytest.approx(
        renormalized_entropy([0.5, 0.5]) + renormalized_entropy([2, -1]), abs=1e-14
    )


@pytest.mark.parametrize("f", [signed_shannon, renormalized_entropy, lambda p: signed_renyi(p, 2)])
def test_zero_weight_rejected(f):
    with pytest.raises(ZeroWeightError):
        f([1, -1])


# --- classical forms ----------------------------------------------------------


def test_classical_values():
    assert classical_shannon([0.5, 0.5]) == 1.0
    assert classical_shannon([0.25] * 4) == 2.0
    assert classical_shannon([0.5]) == 1.0
    assert classical_renyi([0.5], 3) == 1.0
    assert classical_renyi([1 / 3] * 3, 2) == pytest.approx(math.log2(3), abs=1e-14)


def test_classical_rejects_negative():
    with pytest.raises(NegativeComponentError):
        classical_shannon([2, -1])
    with pytest.raises(NegativeComponentError):
        classical_renyi([2, -1], 2)
    with pytest.raises(BadAlphaError):
        classical_renyi([0.5, 0.5], 1)


@settings(max_examples=200)
@given(nonnegative_measures())
def test_lhopital_limit(p):
    h1 = classical_shannon(p)
    for a in (1 - 1e-4, 1 + 1e-4):
        assert classical_renyi(p, a) == pytest.approx(h1, abs=1e-3)


@given(nonnegative_measures(), orders)
def test_signed_matches_classical_on_nonnegative(p, alpha):
    assert signed_renyi(p, alpha) == classical_renyi(p, alpha)
    assert signed_shannon(p) == classical_shannon(p)


@given(nonnegative_measures(), orders)
def test_subprobability_measures_have_nonnegative_entropy(p, alpha):
    # the sign test needs components <= 1: (2,) alone has H_2 = -1
    q = SignedMeasure(p.as_array() / sum(p))
    assert signed_renyi(q, alpha) >= -1e-12
    assert signed_renyi(q.as_array() / 2, alpha) >= -1e-12


def test_unnormalized_nonnegative_measure_can_be_negative():
    assert signed_renyi([2.0], 2) == -1.0


# --- invariants ---------------------------------------------------------------


@given(signed_measures(), orders, st.randoms(use_true_random=False))
def test_symmetry(p, alpha, rnd):
    vals = list(p.values)
    rnd.shuffle(vals)
    q = SignedMeasure(vals)
    for f in (lambda m: signed_renyi(m, alpha), signed_shannon, renormalized_entropy):
        assert f(q) == pytest.approx(f(p), rel=1e-14, abs=1e-14)


@settings(max_examples=300)
@given(signed_measures(), signed_measures(), orders)
def test_extensivity(p, q, alpha):
    hp, hq = signed_renyi(p, alpha), signed_renyi(q, alpha)
    scale = max(1.0, abs(hp), abs(hq))
    assert signed_renyi(p * q, alpha) == pytest.approx(hp + hq, abs=1e-10 * scale)
    assert renormalized_entropy(p * q) == pytest.approx(
        renormalized_entropy(p) + renormalized_entropy(q), abs=1e-10 * scale
    )


def test_extensivity_on_large_products(rng):
    p = SignedMeasure(rng.normal(size=100) + 0.05)
    q = SignedMeasure(rng.normal(size=100) + 0.05)
    for alpha in (0.5, 2, 3):
        gap = signed_renyi(p * q, alpha) - signed_renyi(p, alpha) - signed_renyi(q, alpha)
        assert abs(gap) <= 1e-10 * max(1, abs(signed_renyi(p * q, alpha)))


@pytest.mark.parametrize("values", [(2, -1), (0.6, -0.1, 0.5), (2,) + (-0.125,) * 8])
def test_divergence_at_alpha_one(values):
    eps = 1e-4
    assert signed_renyi(values, 1 + eps) < -100
    assert signed_renyi(values, 1 - eps) > 100


# --- gradient -----------------------------------------------------------------


def test_gradient_hand_value():
    g = signed_renyi_gradient([2, -1], 2)
    assert g == pytest.approx([0.2 / LN2, 1.4 / LN2], rel=1e-14)
    assert g == pytest.approx([0.2885, 2.0197], abs=1e-4)


@pytest.mark.parametrize("n", [1, 3, 6])
@pytest.mark.parametrize("alpha", [1.5, 2, 3])
def test_gradient_uniform(n, alpha):
    assert signed_renyi_gradient([1 / n] * n, alpha) == pytest.approx([-1 / LN2] * n, rel=1e-12)


def test_gradient_zero_component():
    p = np.array([0.0, 0.4, 0.6])
    g = signed_renyi_gradient(p, 2)
    # only the weight term survives at index 0
    assert g[0] == pytest.approx(1 / LN2, rel=1e-14)


def test_gradient_requires_alpha_above_one():
    with pytest.raises(BadAlphaError):
        signed_renyi_gradient([0.5, 0.5], 0.5)


@pytest.mark.parametrize("alpha", [1.5, 2, 3])
def test_gradient_matches_finite_differences(rng, alpha):
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 7))
        p = rng.normal(size=n)
        p[np.abs(p) < 1e-3] += 0.01
        if abs(p.sum()) < 0.1:
            continue
        fd = central_difference(lambda x: signed_renyi(x, alpha), p)
        g = signed_renyi_gradient(p, alpha)
        worst = max(worst, np.max(np.abs(g - fd) / np.maximum(np.abs(fd), 1e-8)))
    assert worst <= 1e-5


def test_entropy_function_dispatch():
    assert entropy_function("signed-shannon")([2, -1]) == -2
    assert entropy_function("signed-renyi", 2)([0.5]) == 1.0
    with pytest.raises(BadAlphaError):
        entropy_function("signed-renyi")
    with pytest.raises(InputError):
        entropy_function("von-neumann")

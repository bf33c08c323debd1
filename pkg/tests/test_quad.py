import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracqho.quad import (NODES, KRONROD_WEIGHTS, GAUSS_WEIGHTS, NonConvergent, NonIntegrable,
                          SingularityHint, integrate, integrate_semiinfinite, integrate_tail)
from oracles import graded_integral


def test_constant():
    res = integrate(lambda t: np.ones_like(t), 0.0, 1.0)
    assert res.value == pytest.approx(1.0, abs=1e-15)
    assert res.converged


def test_inverse_sqrt_with_hint():
    res = integrate(lambda t: t**-0.5, 0.0, 1.0, hints=[SingularityHint(0.0, -0.5)])
    assert res.value == pytest.approx(2.0, rel=1e-12)


def test_gaussian_semiinfinite_map():
    res = integrate_tail(lambda t: np.exp(-t * t), 0.0, 1e-12)
    assert res.value == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-11)


def test_full_line_even():
    res = integrate_semiinfinite(lambda t: np.exp(-t * t), 1e-12, symmetry="even")
    assert res.value == pytest.approx(math.sqrt(math.pi), rel=1e-11)


def test_odd_is_zero_without_evaluation():
    calls = []

    def f(t):
        calls.append(t)
        return t

    res = integrate_semiinfinite(f, symmetry="odd")
    assert res.value == 0.0 and res.evaluations == 0 and not calls


def test_singular_envelope_against_graded_oracle():
    a = 1.5

    def f(t):
        return t ** (a - 2) * np.exp(-2 * t ** (a / 2 + 1) / (a + 2))

    res = integrate_semiinfinite(f, 1e-12, hints=[SingularityHint(0.0, a - 2)], alpha=a)
    ref = 2 * graded_integral(f, 60.0)
    assert res.value == pytest.approx(ref, rel=1e-7)


def test_rule_tables():
    # Gauss nodes of the embedded 10-point rule are the Legendre nodes
    g_nodes = NODES[1::2]
    x, w = np.polynomial.legendre.leggauss(10)
    np.testing.assert_allclose(np.sort(g_nodes), x, atol=1e-15)
    np.testing.assert_allclose(GAUSS_WEIGHTS[1::2][np.argsort(g_nodes)], w, atol=1e-15)
    assert math.fsum(KRONROD_WEIGHTS) == pytest.approx(2.0, abs=1e-15)


@pytest.mark.parametrize("degree", range(16))
def test_polynomials_exact_in_one_panel(degree):
    rng = np.random.default_rng(degree)
    c = rng.normal(size=degree + 1)
    a, b = -0.7, 1.9
    p = np.polynomial.Polynomial(c)
    exact = p.integ()(b) - p.integ()(a)
    res = integrate(p, a, b, tol=1.0)
    assert res.evaluations == 21
    assert res.value == pytest.approx(exact, rel=1e-14, abs=1e-14)


@given(st.floats(min_value=-0.9, max_value=-0.05))
def test_hint_accuracy_and_savings(p):
    f = lambda t: t**p  # noqa: E731
    exact = 1.0 / (1.0 + p)
    hinted = integrate(f, 0.0, 1.0, 1e-12, [SingularityHint(0.0, p)], rel_tol=1e-11)
    assert abs(hinted.value - exact) / exact < 1e-10
    plain = integrate(f, 0.0, 1.0, 1e-12, rel_tol=1e-11)
    assert plain.converged
    assert abs(plain.value - exact) / exact < 1e-9
    assert plain.evaluations >= 10 * hinted.evaluations


def test_nonintegrable_hint_rejected():
    with pytest.raises(NonIntegrable):
        SingularityHint(0.0, -1.0)


def test_panel_limit_reports_partial_result():
    with pytest.raises(NonConvergent) as info:
        integrate(lambda t: np.sin(1.0 / t), 1e-6, 1.0, tol=1e-14, limit=64)
    assert info.value.error_estimate > 0
    assert math.isfinite(info.value.value)


def test_error_estimate_honesty():
    rng = np.random.default_rng(7)
    honest = 0
    trials = 300
    for _ in range(trials):
        amp = rng.normal(size=3)
        freq = rng.uniform(0.5, 15.0, size=3)
        shift = rng.uniform(0, 2 * np.pi, size=3)
        lam = rng.uniform(-3, 3)
        a, b = sorted(rng.uniform(-2, 2, size=2))

        def f(t):
            return (np.sum(amp[:, None] * np.cos(freq[:, None] * t + shift[:, None]), axis=0)
                    + np.exp(lam * t))

        exact = (np.sum(amp / freq * (np.sin(freq * b + shift) - np.sin(freq * a + shift)))
                 + (math.exp(lam * b) - math.exp(lam * a)) / lam)
        res = integrate(f, a, b, tol=1e-6, rel_tol=0.0)
        honest += abs(res.value - exact) <= 3 * res.error_estimate + 1e-15
    assert honest >= 0.99 * trials

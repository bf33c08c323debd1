import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracqho.genpoly import DomainError
from fracqho.spectrum import (Units, action_integral, beta, energy_level, log_gamma,
                              spectrum_table)


@pytest.mark.parametrize("z,expected", [(1.0, 0.0), (0.5, math.log(math.sqrt(math.pi))),
                                        (3.5, math.log(3.3233509704478426))])
def test_log_gamma_examples(z, expected):
    assert log_gamma(z) == pytest.approx(expected, rel=1e-13, abs=1e-15)


@given(st.floats(min_value=1e-3, max_value=150))
def test_log_gamma_against_mpmath(z):
    assert log_gamma(z) == pytest.approx(float(mp.loggamma(z)), rel=1e-13, abs=1e-14)


@pytest.mark.parametrize("bad", [0.0, -1.5])
def test_log_gamma_domain(bad):
    with pytest.raises(DomainError):
        log_gamma(bad)


@pytest.mark.parametrize("a,b,expected", [(0.5, 1.5, math.pi / 2), (0.5, 2.0, 4 / 3), (1, 1, 1.0)])
def test_beta_examples(a, b, expected):
    assert beta(a, b) == pytest.approx(expected, rel=1e-14)


def test_beta_domain():
    with pytest.raises(DomainError):
        beta(0.0, 1.0)


def test_energy_examples():
    assert energy_level(0, 2.0) == 0.5
    assert energy_level(1, 2.0) == 1.5
    # closed form with B(1/2, 2) = 4/3, evaluated at 30 digits
    with mp.workdps(30):
        ref = (mp.pi / (mp.mpf(2) ** 1.5 * mp.mpf(4) / 3)) ** (mp.mpf(2) / 3) * mp.mpf(0.5) ** (mp.mpf(2) / 3)
    assert energy_level(0, 1.0) == pytest.approx(float(ref), rel=1e-14)
    assert energy_level(0, 1.0) == pytest.approx(0.5578, abs=1e-4)


@pytest.mark.parametrize("bad", [0.99, 2.01])
def test_energy_domain(bad):
    with pytest.raises(DomainError):
        energy_level(0, bad)


def test_action_examples():
    assert action_integral(0.5, 2.0) == pytest.approx(math.pi, rel=1e-12)
    assert action_integral(1.5, 2.0) == pytest.approx(3 * math.pi, rel=1e-12)
    assert action_integral(energy_level(0, 1.5), 1.5) == pytest.approx(math.pi, rel=1e-10)


@pytest.mark.parametrize("alpha", [1.0, 1.2, 1.5, 1.8, 2.0])
@pytest.mark.parametrize("n", range(6))
def test_quantization_round_trip(n, alpha):
    target = 2 * math.pi * (n + 0.5)
    assert action_integral(energy_level(n, alpha), alpha) == pytest.approx(target, rel=1e-8)


@given(st.integers(0, 5), st.floats(min_value=1.0, max_value=2.0 - 1e-6))
def test_continuity(n, a):
    assert abs(energy_level(n, a) - energy_level(n, a + 1e-6)) < 1e-4


@pytest.mark.parametrize("n", range(11))
def test_classical_limit_exact(n):
    assert energy_level(n, 2.0) == n + 0.5


@pytest.mark.parametrize("alpha", [1.1, 1.5, 1.9])
def test_growth_exponent(alpha):
    ns = np.arange(10, 101)
    e = np.array([energy_level(int(n), alpha) for n in ns])
    slope = np.polyfit(np.log(ns + 0.5), np.log(e), 1)[0]
    assert slope == pytest.approx(2 * alpha / (2 + alpha), abs=1e-3)


def test_units_enter_round_trip():
    u = Units(hbar=0.7, m=2.0, omega=1.3)
    e = energy_level(2, 1.4, u)
    assert action_integral(e, 1.4, u) == pytest.approx(2 * math.pi * u.hbar * 2.5, rel=1e-9)


def test_units_validated():
    with pytest.raises(ValueError):
        Units(m=0.0)


def test_table_monotone_and_positive():
    t = spectrum_table(range(6), [1.0, 1.5, 2.0])
    for a in (1.0, 1.5, 2.0):
        e = t.energies(a)
        assert all(x > 0 for x in e)
        assert all(b > a_ for a_, b in zip(e, e[1:]))

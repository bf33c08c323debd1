import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracqho.genpoly import momentum_state
from fracqho.measures import (DivergentMeasure, FunctionProfile, NonNormalizableState,
                              SampledDensity, compose_measures, disequilibrium, fisher,
                              momentum_density, normalize, position_density, shannon, variance)
from fracqho.quad import SingularityHint, integrate
from oracles import brute_measures, gaussian_profile_values, graded_integral

GAUSS = gaussian_profile_values()
ALPHAS = (1.2, 1.4, 1.6, 1.8, 2.0)


def gaussian_density(width=1.0):
    """``exp(-t^2 / width^2)`` with its exact score."""
    w2 = width * width
    prof = FunctionProfile(lambda t: np.exp(-t * t / w2), breaks=(0.0, 2.0 * width, 4.0 * width, 12.0 * width),
                           score=lambda t: 4 * t * t / w2**2 * np.exp(-t * t / w2),
                           log_rho=lambda t: -t * t / w2)
    return SampledDensity.from_profile("momentum", prof)


def uniform_density(length):
    prof = FunctionProfile(lambda t: np.where(t < length / 2, 1.0, 0.0), breaks=(0.0, length / 2),
                           score=lambda t: np.zeros_like(t))
    return SampledDensity.from_profile("position", prof)


@pytest.fixture(scope="module")
def computed():
    """Normalized measures for n <= 2 over the alpha grid in both representations."""
    out = {}
    for n in range(3):
        for a in ALPHAS:
            s = momentum_state(n, a)
            out[(n, a, "momentum")] = compose_measures(normalize(momentum_density(s)))
            out[(n, a, "position")] = compose_measures(normalize(position_density(s)))
    return out


# -- analytic anchors ---------------------------------------------------------

def test_normalize_gaussian():
    d = normalize(gaussian_density())
    assert d.normalization == pytest.approx(1 / math.sqrt(math.pi), rel=1e-13)
    assert d(0.3) == pytest.approx(math.exp(-0.09) / math.sqrt(math.pi), rel=1e-13)


def test_normalize_idempotent():
    d = normalize(gaussian_density())
    assert normalize(d) is d


def test_normalize_singular_state_against_oracle():
    s = momentum_state(2, 1.5)
    d = normalize(momentum_density(s))
    mass = 2 * graded_integral(lambda k: s.amplitude(k) ** 2, 40.0)
    assert 1 / d.normalization == pytest.approx(mass, rel=1e-7)


@pytest.mark.parametrize("key", ["F", "S", "D", "C", "P", "P1", "variance"])
def test_gaussian_measures(key):
    m = compose_measures(normalize(gaussian_density()))
    assert getattr(m, key) == pytest.approx(GAUSS[key], rel=1e-9)


@pytest.mark.parametrize("key", ["F", "S", "D", "C", "P", "P1", "variance"])
def test_ground_state_classical_limit(key):
    m = compose_measures(normalize(momentum_density(momentum_state(0, 2.0))))
    assert getattr(m, key) == pytest.approx(GAUSS[key], abs=1e-6)


@pytest.mark.parametrize("length", [0.5, 1.0, 3.0])
def test_uniform(length):
    d = normalize(uniform_density(length))
    assert shannon(d) == pytest.approx(math.log(length), abs=1e-12)
    assert disequilibrium(d) == pytest.approx(1 / length, rel=1e-12)
    assert compose_measures(d).C == pytest.approx(1.0, rel=1e-12)


def test_first_excited_classical_fisher():
    d = normalize(momentum_density(momentum_state(1, 2.0)))
    assert fisher(d) == pytest.approx(6.0, abs=1e-6)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
def test_fisher_divergence_diagnosed(alpha):
    d = normalize(momentum_density(momentum_state(2, alpha)))
    with pytest.raises(DivergentMeasure) as info:
        fisher(d)
    assert info.value.exponent == pytest.approx(alpha - 4)
    assert info.value.measure == "fisher"


def test_disequilibrium_divergence():
    d = normalize(momentum_density(momentum_state(2, 1.4)))
    with pytest.raises(DivergentMeasure) as info:
        disequilibrium(d)
    assert info.value.exponent == pytest.approx(2 * (1.4 - 2))


def test_non_normalizable_density():
    with pytest.raises(NonNormalizableState):
        momentum_density(momentum_state(3, 1.5))


def test_shannon_converged_under_refinement():
    s = momentum_state(0, 1.5)
    a = shannon(normalize(momentum_density(s)))
    b = shannon(normalize(SampledDensity.from_profile(
        "momentum", momentum_density(s).profile, tol=1e-13)))
    assert a == pytest.approx(b, abs=1e-7)


def test_disequilibrium_first_excited_against_oracle():
    ref = brute_measures(1, 1.5)
    d = normalize(momentum_density(momentum_state(1, 1.5)))
    assert disequilibrium(d) == pytest.approx(ref["D"], rel=1e-7)


def test_variance_heavy_tail_is_infinite():
    d = normalize(position_density(momentum_state(2, 1.5)))
    assert variance(d) == math.inf


def test_raw_mode_keeps_mass():
    s = momentum_state(1, 1.5)
    raw = compose_measures(momentum_density(s))
    norm = compose_measures(normalize(momentum_density(s)))
    assert not raw.normalized and norm.normalized
    mass = 2 * integrate(lambda k: s.amplitude(k) ** 2, 0, 30, 1e-13).value
    # D scales with mass^2, F with mass; variance is a ratio
    assert raw.D == pytest.approx(norm.D * mass**2, rel=1e-9)
    assert raw.F == pytest.approx(norm.F * mass, rel=1e-8)
    assert raw.variance == pytest.approx(norm.variance, rel=1e-9)


# -- identities and inequalities ----------------------------------------------

def test_definitional_identities(computed):
    for m in computed.values():
        assert m.H == math.exp(m.S)
        assert m.C == m.H * m.D
        assert m.P == m.J3 * m.F
        assert m.P1 == m.J1 * m.F


def test_cramer_rao_and_stam(computed):
    for key, m in computed.items():
        if math.isfinite(m.F):
            assert m.F * m.variance >= 1 - 1e-9, key
            assert m.F * m.J1 >= 1 - 1e-9, key


def test_gaussian_saturates_bounds(computed):
    for rep in ("momentum", "position"):
        m = computed[(0, 2.0, rep)]
        assert m.F * m.variance == pytest.approx(1.0, abs=1e-6)
        assert m.F * m.J1 == pytest.approx(1.0, abs=1e-6)


def test_lmc_lower_bound(computed):
    for key, m in computed.items():
        assert m.C >= 1 - 1e-6, key


def test_uncertainty_cross_route(computed):
    # F_x = 4 <k^2> and F_k = 4 <x^2> for real position wavefunctions
    for (n, a, rep), m in computed.items():
        if rep != "position":
            continue
        mk = computed[(n, a, "momentum")]
        assert m.F == pytest.approx(4 * mk.variance, rel=1e-7)
        if math.isfinite(mk.F):
            assert mk.F == pytest.approx(4 * m.variance, rel=1e-7)


@pytest.mark.parametrize("lam", [0.5, 2.0, 10.0])
@pytest.mark.parametrize("n", [0, 1])
def test_complexity_scale_invariance(lam, n):
    d = normalize(momentum_density(momentum_state(n, 1.5)))
    m, ms = compose_measures(d), compose_measures(d.rescaled(lam))
    assert ms.C == pytest.approx(m.C, abs=1e-6)
    assert ms.S == pytest.approx(m.S + math.log(lam), abs=1e-8)
    assert ms.D == pytest.approx(m.D / lam, rel=1e-8)


@given(st.floats(min_value=0.2, max_value=5.0))
def test_gaussian_width_family(width):
    m = compose_measures(normalize(gaussian_density(width)))
    assert m.F * m.variance == pytest.approx(1.0, rel=1e-8)
    assert m.C == pytest.approx(math.sqrt(math.e / 2), rel=1e-8)


def test_ground_complexity_closed_form():
    alphas = (1.0, 1.2, 1.4, 1.6, 1.8, 2.0)
    c = [compose_measures(normalize(momentum_density(momentum_state(0, a, strict=False)))).C
         for a in alphas]
    assert all(b < a for a, b in zip(c, c[1:]))
    # generalized-normal density exp(-2 c |k|^b): C = (e/2)^(1/b)
    for a, v in zip(alphas, c):
        assert v == pytest.approx((math.e / 2) ** (1 / (a / 2 + 1)), rel=1e-9)


def test_sampled_values_nonnegative():
    d = position_density(momentum_state(2, 1.5))
    assert d.values.min() >= 0 and d.clipped == 0
    assert d.singularities == ()
    k = momentum_density(momentum_state(2, 1.5))
    assert k.singularities == (SingularityHint(0.0, 1.5 - 2),)

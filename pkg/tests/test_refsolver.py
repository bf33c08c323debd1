import math
import warnings

import numpy as np
import pytest

from fracqho.genpoly import momentum_state
from fracqho.refsolver import (KGrid, apply_operator, diagonalize, eigen_residual,
                               oscillator_energy, overlaps)
from fracqho.spectrum import energy_level
from fracqho.transform import NonNormalizableState


@pytest.fixture(scope="module")
def classical():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return diagonalize(2.0, 12.0, 4096, count=11)


def test_classical_eigenvalues(classical):
    np.testing.assert_allclose(classical.eigenvalues, 2 * np.arange(11) + 1, atol=1e-6)
    assert classical.converged


def test_classical_matches_closed_spectrum(classical):
    for n, e in enumerate(classical.eigenvalues):
        assert oscillator_energy(e) == pytest.approx(energy_level(n, 2.0), abs=1e-6)


def test_ground_vector_is_gaussian(classical):
    k = classical.grid.k()
    v = classical.eigenvectors[:, 0]
    ref = np.exp(-k * k / 2) / math.pi**0.25
    v = v * np.sign(v @ ref)
    assert np.max(np.abs(v - ref)) < 1e-6


def test_vectors_orthonormal(classical):
    g = classical.eigenvectors.T @ classical.eigenvectors * classical.grid.h
    np.testing.assert_allclose(g, np.eye(11), atol=1e-6)
    assert np.all(np.diff(classical.eigenvalues) > 0)


def test_fractional_grid_doubling():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        a = diagonalize(1.5, 20.0, 8192, count=10)
        b = diagonalize(1.5, 20.0, 16384, count=10)
    np.testing.assert_allclose(a.eigenvalues, b.eigenvalues, atol=1e-6)


def test_box_warning():
    with pytest.warns(UserWarning):
        diagonalize(2.0, 5.0, 1024, count=10)


def test_grid_validation():
    with pytest.raises(ValueError):
        diagonalize(2.0, 10.0, 256)
    with pytest.raises(ValueError):
        KGrid(10.0, 1025)
    g = KGrid(10.0, 1024)
    assert not np.any(g.k() == 0.0)


@pytest.mark.parametrize("n", range(4))
def test_classical_states_are_eigenstates(n, classical):
    rq, res = eigen_residual(momentum_state(n, 2.0), 2.0, KGrid(12.0, 4096))
    assert rq == pytest.approx(2 * n + 1, abs=1e-6)
    assert rq == pytest.approx(classical.eigenvalues[n], abs=1e-6)
    assert res < 1e-6


def test_fractional_residual_reported():
    rq, res = eigen_residual(momentum_state(1, 1.5))
    assert math.isfinite(rq) and res > 0


def test_residual_rejects_non_normalizable():
    with pytest.raises(NonNormalizableState):
        eigen_residual(momentum_state(3, 1.5))


def test_stencils_on_polynomial():
    g = KGrid(3.0, 1024)
    k = g.k()
    v = k**4 * np.exp(-k * k)
    exact = -(np.exp(-k * k) * (12 * k**2 - 18 * k**4 + 4 * k**6)) + k**2 * v
    interior = slice(4, -4)
    for order, tol in ((2, 1e-3), (4, 1e-7)):
        np.testing.assert_allclose(apply_operator(2.0, g, v, order)[interior], exact[interior], atol=tol)


def test_overlap_diagnostic():
    ov = overlaps(1.5)
    assert ov.shape == (4, 4)
    assert np.all(np.isnan(ov[3]))
    # parity: even and odd states do not mix
    assert ov[0, 1] < 1e-12 and ov[1, 0] < 1e-12
    assert ov[0, 0] > 0.9
    exact = overlaps(2.0, nmax=2)
    np.testing.assert_allclose(exact, np.eye(3), atol=1e-6)

"""Finite-difference eigensolver for ``L = -d^2/dk^2 + |k|**alpha`` on a momentum grid.

The grid is cell-centred, ``k_j = -K + (j + 1/2) h`` with ``h = 2K/N`` and
``N`` even, so ``k = 0`` falls between two samples and the ``|k|**alpha``
cusp is never sampled directly.  Dirichlet ends are harmless because the
confining potential makes the eigenfunctions decay like ``exp(-K**(1+alpha/2))``.

Eigenvalues are Richardson-extrapolated from the three grids ``N/4, N/2, N``.
The second-order stencil has an ``h**2`` leading error; the second exponent
is ``4`` at ``alpha = 2`` and ``alpha + 1`` below that (the cusp).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal, solve_banded

from .genpoly import MomentumState, check_alpha, momentum_state
from .transform import require_normalizable

MIN_POINTS = 512
CONVERGENCE_GATE = 1e-6


class EigenConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class KGrid:
    k_max: float
    points: int

    def __post_init__(self):
        if not self.k_max > 0:
            raise ValueError("k_max must be positive")
        if self.points < 8 or self.points % 2:
            raise ValueError("points must be even and >= 8")

    @property
    def h(self) -> float:
        return 2.0 * self.k_max / self.points

    def k(self) -> np.ndarray:
        return -self.k_max + (np.arange(self.points) + 0.5) * self.h


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray   # columns, sum(v**2) * h = 1
    grid: KGrid
    residuals: np.ndarray
    alpha: float
    refinement_change: float = math.nan
    raw_eigenvalues: np.ndarray = field(default=None, repr=False)

    @property
    def converged(self) -> bool:
        return self.refinement_change < CONVERGENCE_GATE


def _operator(alpha: float, grid: KGrid):
    k, h = grid.k(), grid.h
    diag = 2.0 / h**2 + np.abs(k) ** alpha
    off = np.full(grid.points - 1, -1.0 / h**2)
    return diag, off


def _lowest(alpha: float, grid: KGrid, count: int, vectors: bool = False):
    diag, off = _operator(alpha, grid)
    try:
        return eigh_tridiagonal(diag, off, eigvals_only=not vectors,
                                select="i", select_range=(0, count - 1))
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(str(exc)) from exc


def _richardson(alpha: float, k_max: float, points: int, count: int) -> np.ndarray:
    p2 = 4.0 if alpha == 2.0 else alpha + 1.0
    vals = [_lowest(alpha, KGrid(k_max, points // s), count) for s in (4, 2, 1)]
    hs = np.array([4.0, 2.0, 1.0])
    design = np.stack([np.ones(3), hs**2, hs**p2], axis=1)
    return np.linalg.solve(design, np.array(vals))[0]


def apply_operator(alpha: float, grid: KGrid, values: np.ndarray, order: int = 2) -> np.ndarray:
    """``(-d^2/dk^2 + |k|^alpha) v`` with a central stencil of the given order."""
    v = np.asarray(values)
    h2 = grid.h**2
    pad = np.pad(v, 2)
    if order == 2:
        lap = (pad[1:-3] - 2 * pad[2:-2] + pad[3:-1]) / h2
    elif order == 4:
        lap = (-pad[:-4] + 16 * pad[1:-3] - 30 * pad[2:-2] + 16 * pad[3:-1] - pad[4:]) / (12 * h2)
    else:
        raise ValueError("order must be 2 or 4")
    return -lap + np.abs(grid.k()) ** alpha * v


def _polish(alpha: float, grid: KGrid, vec: np.ndarray, value: float) -> np.ndarray:
    """One inverse-iteration step with the fourth-order operator at ``value``."""
    h2 = grid.h**2
    n = grid.points
    ab = np.zeros((5, n))
    ab[0, 2:] = ab[4, :-2] = 1.0 / (12 * h2)
    ab[1, 1:] = ab[3, :-1] = -16.0 / (12 * h2)
    ab[2] = 30.0 / (12 * h2) + np.abs(grid.k()) ** alpha - value
    out = solve_banded((2, 2), ab, vec)
    out /= math.sqrt(np.sum(out**2) * grid.h)
    return out * np.sign(np.dot(out, vec))


def diagonalize(alpha: float, k_max: float = 20.0, points: int = 4096, count: int = 20,
                polish: bool = True) -> EigenResult:
    """Lowest ``count`` eigenpairs of ``-d^2/dk^2 + |k|^alpha``.

    Eigenvalues are Richardson-extrapolated; eigenvectors come from the
    finest grid and, with ``polish``, one fourth-order inverse-iteration step
    at the extrapolated eigenvalue (bringing them to ``O(h**4)``).
    """
    alpha = check_alpha(alpha, strict=False)
    if points < MIN_POINTS or points % 8:
        raise ValueError(f"points must be >= {MIN_POINTS} and divisible by 8 (refinement ladder)")
    grid = KGrid(k_max, points)
    raw, vecs = _lowest(alpha, grid, count, vectors=True)
    vecs = vecs / math.sqrt(grid.h)
    values = _richardson(alpha, k_max, points, count)
    coarse = _richardson(alpha, k_max, points // 2, count) if points // 8 >= 8 else values
    change = float(np.max(np.abs(values - coarse)))
    if k_max**alpha < 10.0 * values[-1]:
        warnings.warn(f"k_max^alpha = {k_max**alpha:.4g} is below 10x the largest requested "
                      f"eigenvalue {values[-1]:.4g}; upper states may feel the box", stacklevel=2)
    order, lam = 2, raw
    if polish:
        vecs = np.stack([_polish(alpha, grid, vecs[:, i], values[i]) for i in range(count)], 1)
        order, lam = 4, values
    res = np.array([np.linalg.norm(apply_operator(alpha, grid, vecs[:, i], order) - lam[i] * vecs[:, i])
                    * math.sqrt(grid.h) for i in range(count)])
    return EigenResult(values, vecs, grid, res, alpha, change, raw)


def sample_state(state: MomentumState, grid: KGrid) -> np.ndarray:
    """Real samples ``sgn(k)^p u(|k|)`` normalized in the grid inner product."""
    require_normalizable(state)
    k = grid.k()
    u = state.amplitude(np.abs(k))
    if state.parity:
        u = np.sign(k) * u
    return u / math.sqrt(np.sum(u * u) * grid.h)


def eigen_residual(state: MomentumState, alpha: float | None = None,
                   grid: KGrid | None = None, order: int = 4) -> tuple[float, float]:
    """Rayleigh quotient and ``||(L - rayleigh) phi|| / ||phi||`` on the grid."""
    alpha = state.alpha if alpha is None else alpha
    grid = grid if grid is not None else KGrid(12.0 if alpha == 2.0 else 20.0, 4096)
    v = sample_state(state, grid)
    lv = apply_operator(alpha, grid, v, order)
    rq = float(np.dot(v, lv) * grid.h)
    r = lv - rq * v
    return rq, float(math.sqrt(np.dot(r, r) * grid.h))


def overlaps(alpha: float, result: EigenResult | None = None, nmax: int = 3) -> np.ndarray:
    """``|<phi_n^fact, v_m>|`` for ``n, m <= nmax``; NaN rows for non-normalizable states."""
    result = result if result is not None else diagonalize(alpha, count=nmax + 1)
    grid = result.grid
    out = np.full((nmax + 1, nmax + 1), np.nan)
    for n in range(nmax + 1):
        st = momentum_state(n, alpha, strict=False)
        if not st.normalizable:
            continue
        v = sample_state(st, grid)
        out[n] = np.abs(v @ result.eigenvectors[:, : nmax + 1]) * grid.h
    return out


def oscillator_energy(eigenvalue: float) -> float:
    """Map an eigenvalue of ``-d^2/dk^2 + k^2`` to ``hbar w (n + 1/2)`` at unit constants."""
    return eigenvalue / 2.0

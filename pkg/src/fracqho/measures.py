"""Information-theoretic functionals of one-dimensional probability densities.

Every density handled here is even, so integrals are folded onto
``[0, inf)`` and doubled.  A density is described by a *profile*: pointwise
callables for ``rho``, ``log rho`` and the Fisher integrand
``rho'**2 / rho = 4 (sqrt(rho))'**2``, together with its algebraic behaviour
at the origin and in the tail.  Those exponents decide up front whether a
functional is finite, and they steer the quadrature.

Definitions (``rho`` normalized)::

    F = int rho'^2 / rho        S = -int rho ln rho      D = int rho^2
    H = exp(S)     C = H * D    J3 = exp(2S/3) / (2 pi e)
    J1 = exp(2S) / (2 pi e)     P = J3 * F               P1 = J1 * F
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .genpoly import MomentumState
from .quad import DEFAULT_TOL, FISHER_TOL, SingularityHint, integrate, integrate_tail
from .transform import (CROSSOVER, GridSpec, NonNormalizableState, PositionEvaluator,
                        envelope_kmax, require_normalizable)

__all__ = [
    "DivergentMeasure", "NonNormalizableState", "DensityProfile", "FunctionProfile",
    "MomentumProfile", "PositionProfile", "SampledDensity", "InfoMeasures",
    "momentum_density", "position_density", "normalize", "fisher", "shannon",
    "disequilibrium", "variance", "compose_measures", "UNDERFLOW",
]

UNDERFLOW = 1e-300
CLIP = 1e-12
MEASURES = ("F", "S", "D", "H", "C", "J3", "J1", "P", "P1", "variance")


class DivergentMeasure(ArithmeticError):
    """A functional is infinite; ``exponent`` is the offending power law."""

    def __init__(self, measure: str, exponent: float, where: str = "origin"):
        super().__init__(f"{measure} diverges: integrand ~ t^{exponent:.6g} at the {where}")
        self.measure = measure
        self.exponent = exponent
        self.where = where


# -- profiles -----------------------------------------------------------------

class DensityProfile:
    """Even density on the line, described on ``t >= 0``.

    Subclasses set ``breaks`` (finite panel boundaries starting at 0),
    ``origin`` (``rho ~ t**origin`` at 0, None when smooth), ``score_origin``
    (same for the Fisher integrand) and ``tail`` / ``score_tail`` (``rho ~
    t**-tail`` beyond the last break; None when ``rho`` is negligible there).
    """

    breaks: tuple[float, ...]
    origin: float | None = None
    score_origin: float | None = None
    tail: float | None = None
    score_tail: float | None = None

    def rho(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def log_rho(self, t: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.rho(t))

    def score(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"{type(self).__name__} has no derivative")

    def rescaled(self, lam: float) -> "DensityProfile":
        return ScaledProfile(self, lam)


class FunctionProfile(DensityProfile):
    """Density given by plain callables (used for analytic test densities)."""

    def __init__(self, rho: Callable, breaks=(0.0, math.inf), *, score: Callable | None = None,
                 log_rho: Callable | None = None, origin=None, score_origin=None,
                 tail=None, score_tail=None):
        self._rho, self._score, self._log = rho, score, log_rho
        self.breaks = tuple(float(b) for b in breaks)
        self.origin, self.score_origin = origin, score_origin
        self.tail, self.score_tail = tail, score_tail

    def rho(self, t):
        return self._rho(np.asarray(t, dtype=float))

    def log_rho(self, t):
        if self._log is None:
            return super().log_rho(t)
        return self._log(np.asarray(t, dtype=float))

    def score(self, t):
        if self._score is None:
            return super().score(t)
        return self._score(np.asarray(t, dtype=float))


class ScaledProfile(DensityProfile):
    """``rho_lam(t) = rho(t / lam) / lam``; integrated afresh, not transformed."""

    def __init__(self, base: DensityProfile, lam: float):
        if not lam > 0:
            raise ValueError("scale factor must be positive")
        self.base, self.lam = base, float(lam)
        self.breaks = tuple(b * lam for b in base.breaks)
        self.origin, self.score_origin = base.origin, base.score_origin
        self.tail, self.score_tail = base.tail, base.score_tail

    def rho(self, t):
        return self.base.rho(np.asarray(t) / self.lam) / self.lam

    def log_rho(self, t):
        return self.base.log_rho(np.asarray(t) / self.lam) - math.log(self.lam)

    def score(self, t):
        return self.base.score(np.asarray(t) / self.lam) / self.lam**3


class MomentumProfile(DensityProfile):
    """``rho(k) = u(|k|)**2`` with the analytic polynomial-times-envelope form."""

    def __init__(self, state: MomentumState, cutoff: float | None = None):
        require_normalizable(state)
        self.state = state
        self.deriv = state.amplitude_derivative_poly()
        cut = envelope_kmax(state, 1e-20) if cutoff is None else cutoff
        lo = state.regularization or 0.0
        self.lower = lo
        # split near the peak so the adaptive rule meets the bulk early
        inner = [b for b in (0.5, 1.0, 2.0, 4.0) if lo < b < cut]
        self.breaks = (lo, *inner, cut)
        if lo > 0:
            self.origin = self.score_origin = None
        else:
            self.origin = 2.0 * state.min_exponent()
            self.score_origin = (2.0 * self.deriv.min_exponent()) if len(self.deriv) else None

    def rho(self, t):
        return self.state.amplitude(t) ** 2

    def log_rho(self, t):
        return 2.0 * self.state.log_abs_amplitude(t)

    def score(self, t):
        t = np.asarray(t, dtype=float)
        d = self.deriv.radial(t) * self.state.envelope(t)
        if self.lower:
            d = np.where(t < self.lower, 0.0, d)
        return 4.0 * d * d


class PositionProfile(DensityProfile):
    """``rho(x) = |psi(x)|**2`` from the momentum-to-position evaluator."""

    def __init__(self, evaluator: PositionEvaluator):
        self.ev = evaluator
        xc = evaluator.crossover
        self.breaks = tuple(b for b in (0.0, 1.0, 2.0, 4.0, 8.0) if b < xc) + (xc,)
        self.origin = self.score_origin = None
        p = evaluator.tail_power()
        q = evaluator.tail_power(derivative=True)
        self.tail = None if p is None else 2.0 * p
        self.score_tail = None if q is None else 2.0 * q
        # Gaussian-type states are negligible beyond the crossover
        self._decayed = p is None

    def rho(self, t):
        a = self.ev.amplitude(t)
        return a * a

    def score(self, t):
        d = self.ev.amplitude(t, derivative=True)
        return 4.0 * d * d


# -- sampled density ----------------------------------------------------------

@dataclass(frozen=True)
class SampledDensity:
    """Density samples plus the profile used for exact functionals.

    ``normalization`` multiplies the profile; ``normalized`` marks unit mass.
    """

    representation: str
    grid: np.ndarray
    values: np.ndarray
    profile: DensityProfile = field(repr=False)
    normalization: float = 1.0
    normalized: bool = False
    singularities: tuple[SingularityHint, ...] = ()
    clipped: int = 0
    source: tuple[int, float] | None = None
    tol: float = DEFAULT_TOL

    @classmethod
    def from_profile(cls, representation: str, profile: DensityProfile, extent: float | None = None,
                     samples: int = 1025, **kw) -> "SampledDensity":
        if representation not in ("position", "momentum"):
            raise ValueError(f"unknown representation {representation!r}")
        if extent is None:
            extent = profile.breaks[-1] if math.isfinite(profile.breaks[-1]) else 10.0
        grid = np.linspace(-extent, extent, samples)
        with np.errstate(all="ignore"):
            vals = profile.rho(np.abs(grid))
        vals = np.where(np.isfinite(vals), vals, np.inf)
        low = vals < 0
        if np.any(vals < -CLIP):
            raise ValueError("density has negative samples beyond transform noise")
        vals = np.where(low, 0.0, vals)
        hints = ()
        if profile.origin is not None and profile.origin < 0:
            hints = (SingularityHint(0.0, profile.origin),)
        return cls(representation, grid, vals, profile, singularities=hints,
                   clipped=int(low.sum()), **kw)

    def rescaled(self, lam: float) -> "SampledDensity":
        """Density of ``lam * X``; functionals are recomputed, not transformed."""
        prof = self.profile.rescaled(lam)
        return replace(self, grid=self.grid * lam, values=self.values / lam, profile=prof)

    def __call__(self, t) -> np.ndarray:
        return self.normalization * self.profile.rho(np.abs(np.asarray(t, dtype=float)))


def momentum_density(state: MomentumState, **kw) -> SampledDensity:
    prof = MomentumProfile(state)
    return SampledDensity.from_profile("momentum", prof, source=(state.n, state.alpha), **kw)


def position_density(state: MomentumState, grid: GridSpec | None = None,
                     crossover: float = CROSSOVER, **kw) -> SampledDensity:
    prof = PositionProfile(PositionEvaluator(state, grid, crossover))
    return SampledDensity.from_profile("position", prof, source=(state.n, state.alpha), **kw)


# -- integration core ---------------------------------------------------------

def _hints(lo: float, exponent: float | None) -> list[SingularityHint]:
    if lo != 0.0 or exponent is None:
        return []
    if exponent >= 0 and float(exponent).is_integer():
        return []
    return [SingularityHint(0.0, exponent)]


def _half_line(profile: DensityProfile, f: Callable, tol: float, origin: float | None,
               tail: float | None, name: str) -> float:
    """``2 * int_0^inf f``, panel by panel, with origin and tail analysis."""
    if origin is not None and origin <= -1.0:
        raise DivergentMeasure(name, origin, "origin")
    b = profile.breaks
    parts = []
    for lo, hi in zip(b[:-1], b[1:]):
        if math.isinf(hi):
            parts.append(integrate_tail(f, lo, tol, rel_tol=tol).value)
            continue
        res = integrate(f, lo, hi, tol, _hints(lo, origin), rel_tol=tol)
        parts.append(res.value)
    if math.isfinite(b[-1]) and tail is not None:
        if tail <= 1.0:
            raise DivergentMeasure(name, -tail, "tail")
        parts.append(integrate_tail(f, b[-1], tol, decay=tail, rel_tol=tol).value)
    return 2.0 * math.fsum(parts)


def _mass(density: SampledDensity) -> float:
    prof = density.profile
    raw = _half_line(prof, prof.rho, density.tol * 0.1, prof.origin, prof.tail, "mass")
    return density.normalization * raw


def normalize(density: SampledDensity) -> SampledDensity:
    """Scale to unit mass, recording the constant in ``normalization``."""
    if density.normalized:
        return density
    try:
        mass = _mass(density)
    except DivergentMeasure as exc:
        src = density.source or (-1, math.nan)
        raise NonNormalizableState(src[0], src[1], exc.exponent / 2.0) from exc
    c = density.normalization / mass
    return replace(density, normalization=c, normalized=True, values=density.values * (c / density.normalization))


def fisher(density: SampledDensity) -> float:
    """``int rho'^2 / rho``."""
    prof = density.profile
    raw = _half_line(prof, prof.score, FISHER_TOL * 1e-2, prof.score_origin,
                     prof.score_tail, "fisher")
    return density.normalization * raw


def shannon(density: SampledDensity) -> float:
    """``-int rho ln rho`` (integrand 0 where ``rho`` underflows)."""
    prof = density.profile

    def f(t):
        r = prof.rho(t)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = r * prof.log_rho(t)
        return np.where(r > UNDERFLOW, out, 0.0)

    c = density.normalization
    raw = _half_line(prof, f, density.tol * 0.1, prof.origin, prof.tail, "shannon")
    mass = _half_line(prof, prof.rho, density.tol * 0.1, prof.origin, prof.tail, "mass")
    return -c * raw - c * math.log(c) * mass


def disequilibrium(density: SampledDensity) -> float:
    """``int rho**2``."""
    prof = density.profile
    origin = None if prof.origin is None else 2.0 * prof.origin
    tail = None if prof.tail is None else 2.0 * prof.tail
    raw = _half_line(prof, lambda t: prof.rho(t) ** 2, density.tol * 0.1, origin, tail,
                     "disequilibrium")
    return density.normalization**2 * raw


def variance(density: SampledDensity) -> float:
    """Second central moment (the mean is zero by evenness); ``inf`` for heavy tails."""
    prof = density.profile
    origin = None if prof.origin is None else prof.origin + 2.0
    tail = None if prof.tail is None else prof.tail - 2.0
    if tail is not None and tail <= 1.0:
        return math.inf
    raw = _half_line(prof, lambda t: t * t * prof.rho(t), density.tol * 0.1, origin, tail,
                     "variance")
    c = density.normalization
    if not density.normalized:
        mass = _half_line(prof, prof.rho, density.tol * 0.1, prof.origin, prof.tail, "mass")
        return raw / mass
    return c * raw


# -- composition --------------------------------------------------------------

@dataclass(frozen=True)
class InfoMeasures:
    F: float
    S: float
    D: float
    H: float
    C: float
    J3: float
    J1: float
    P: float
    P1: float
    variance: float
    representation: str = "momentum"
    normalized: bool = True
    divergences: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in MEASURES}

    @property
    def finite(self) -> bool:
        return not self.divergences


def entropy_power(S: float, dim: int) -> float:
    """``exp(2S/dim) / (2 pi e)``."""
    return math.exp(2.0 * S / dim) / (2.0 * math.pi * math.e)


def compose_measures(density: SampledDensity) -> InfoMeasures:
    """All measures of one density; divergent functionals become ``inf`` and are flagged."""
    flags: dict[str, float] = {}

    def guarded(fn, name):
        try:
            return fn(density)
        except DivergentMeasure as exc:
            flags[name] = exc.exponent
            return math.inf

    F = guarded(fisher, "F")
    S = shannon(density)
    D = guarded(disequilibrium, "D")
    var = variance(density)
    if math.isinf(var):
        flags["variance"] = -(density.profile.tail - 2.0)
    H = math.exp(S)
    C = H * D
    J3, J1 = entropy_power(S, 3), entropy_power(S, 1)
    return InfoMeasures(F, S, D, H, C, J3, J1, J3 * F, J1 * F, var,
                        density.representation, density.normalized, flags)

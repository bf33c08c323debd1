"""Momentum-to-position transform of the oscillator states.

Convention (hbar = 1)::

    phi(k) = int exp(-ikx) psi(x) dx,     psi(x) = (1/2pi) int exp(ikx) phi(k) dk.

Writing ``phi(k) = phase * sgn(k)**p * u(|k|)`` the transform reduces to a
real amplitude ``psi(x) = phase * i**p * A(x)`` with

    A(x) = (1/pi) int_0^inf u(k) cos(kx) dk        (p = 0)
    A(x) = (1/pi) int_0^inf u(k) sin(kx) dk        (p = 1).

Near the origin ``u`` has a generalized power expansion
``u(k) = sum_r w_r k**s_r`` (polynomial terms times the series of the
exponential envelope).  Two consequences are used here:

* the trapezoid sum ``h * sum_{j>=1} f(jh)`` differs from the integral by
  ``sum_r b_r zeta(-s_r) h**(s_r+1)`` (generalized Euler-Maclaurin), where
  ``b_r`` are the expansion coefficients of the full integrand.  Subtracting
  that series makes the discrete transform exact to round-off even with
  ``|k|**e`` terms, ``-1/2 < e < 0``, that blow up at ``k = 0``;
* for large ``|x|`` the same expansion gives
  ``int_0^inf k**s cos(kx) dk = Gamma(s+1) cos(pi(s+1)/2) x**-(s+1)``, an
  asymptotic series for the algebraic tails of ``psi``.

The discrete sum is used for ``|x| <= crossover`` and the asymptotic series
beyond it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, zeta

from .genpoly import MomentumState
from .quad import DEFAULT_TOL, SingularityHint, integrate, integrate_tail

CROSSOVER = 15.0
MIN_POINTS = 2**10
DEFAULT_POINTS = 2**16
ENVELOPE_FLOOR = 1e-16
_SERIES_FLOOR = 1e-22
_CHUNK = 1 << 22


class NonNormalizableState(ArithmeticError):
    """The state's density is not integrable at the origin."""

    def __init__(self, n: int, alpha: float, exponent: float):
        super().__init__(
            f"state n={n}, alpha={alpha}: |phi|^2 ~ |k|^{2 * exponent:g} near k = 0 "
            "is not integrable (attach a regularization epsilon)")
        self.n = n
        self.alpha = alpha
        self.exponent = 2 * exponent


def require_normalizable(state: MomentumState) -> None:
    if not state.normalizable:
        raise NonNormalizableState(state.n, state.alpha, state.min_exponent())


def envelope_kmax(state: MomentumState, floor: float = ENVELOPE_FLOOR) -> float:
    """Smallest k beyond which ``(1+k)|u(k)|`` stays below ``floor * max|u|``."""
    r = np.linspace(1e-3, 10.0, 2001)
    while True:
        u = np.abs(state.amplitude(r)) * (1.0 + r)
        peak = u.max()
        above = np.nonzero(u > floor * peak)[0]
        if above[-1] < len(r) - 1:
            return float(r[above[-1] + 1])
        r = np.linspace(1e-3, 2 * r[-1], 2 * len(r))


@dataclass(frozen=True)
class GridSpec:
    """Symmetric momentum grid ``k_j = (j - N/2) * dk`` with ``dk = 2 k_max / N``.

    The reciprocal position grid has spacing ``pi / k_max`` and extent
    ``N * pi / (2 k_max)`` on each side.
    """

    k_max: float
    points: int = DEFAULT_POINTS

    def __post_init__(self):
        if not self.k_max > 0:
            raise ValueError("k_max must be positive")
        p = self.points
        if p < MIN_POINTS or p & (p - 1):
            raise ValueError(f"points must be a power of two >= {MIN_POINTS}, got {p}")

    @classmethod
    def for_state(cls, state: MomentumState, points: int = DEFAULT_POINTS,
                  k_max: float | None = None) -> "GridSpec":
        return cls(envelope_kmax(state) if k_max is None else k_max, points)

    @property
    def dk(self) -> float:
        return 2.0 * self.k_max / self.points

    @property
    def dx(self) -> float:
        return math.pi / self.k_max

    def k(self) -> np.ndarray:
        return (np.arange(self.points) - self.points // 2) * self.dk

    def x(self) -> np.ndarray:
        return (np.arange(self.points) - self.points // 2) * self.dx

    def doubled(self) -> "GridSpec":
        """Twice the points and twice ``k_max`` (same ``dk``, finer ``dx``)."""
        return GridSpec(2 * self.k_max, 2 * self.points)

    def refined(self) -> "GridSpec":
        """Twice the points at the same ``k_max`` (half ``dk``, twice the x extent)."""
        return GridSpec(self.k_max, 2 * self.points)


def _trig_pi(t: np.ndarray | float, kind: str) -> np.ndarray:
    """cos(pi t) or sin(pi t) with exact zeros at the half/whole integers."""
    t = np.asarray(t, dtype=float)
    twice = 2.0 * t
    snap = np.abs(twice - np.round(twice)) < 1e-12
    val = np.cos(np.pi * t) if kind == "cos" else np.sin(np.pi * t)
    exact = np.round(twice).astype(np.int64) % 4  # multiples of pi/2
    table = {"cos": np.array([1.0, 0.0, -1.0, 0.0]), "sin": np.array([0.0, 1.0, 0.0, -1.0])}[kind]
    return np.where(snap, table[exact], val)


def _zeta_neg(s: np.ndarray) -> np.ndarray:
    """zeta(-s) with the trivial zeros at positive even s made exact."""
    s = np.asarray(s, dtype=float)
    out = zeta(-s)
    r = np.round(s)
    trivial = (np.abs(s - r) < 1e-12) & (r >= 2) & (r.astype(np.int64) % 2 == 0)
    return np.where(trivial, 0.0, out)


@dataclass(frozen=True)
class _Kernel:
    """Integrand ``u(k) * sign * k**q * trig(kx)`` of one transform."""

    q: int
    trig: str      # 'cos' or 'sin'
    sign: float


def _kernels(parity: int) -> tuple[_Kernel, _Kernel]:
    if parity == 0:
        return _Kernel(0, "cos", 1.0), _Kernel(1, "sin", -1.0)
    return _Kernel(0, "sin", 1.0), _Kernel(1, "cos", 1.0)


class PositionEvaluator:
    """Pointwise ``psi(x)`` and ``psi'(x)`` of a momentum state.

    Parameters
    ----------
    state : MomentumState
        Must be normalizable and not regularized.
    grid : GridSpec
        Supplies the momentum step ``dk`` and truncation ``k_max``.
    crossover : float
        ``|x|`` beyond which the asymptotic series replaces the discrete sum.
    """

    def __init__(self, state: MomentumState, grid: GridSpec | None = None,
                 crossover: float = CROSSOVER):
        require_normalizable(state)
        if state.regularization is not None:
            raise ValueError("regularized states have no algebraic expansion; "
                             "use inverse_fourier for approximate samples")
        self.state = state
        self.grid = grid if grid is not None else GridSpec.for_state(state)
        self.crossover = float(crossover)
        self.phase = state.phase * (1j) ** state.parity
        h = self.grid.dk
        self.h = h
        self.k = np.arange(1, int(self.grid.k_max / h) + 1) * h
        self.u = state.amplitude(self.k)
        self._weights, self._powers = self._expansion(state, 80)
        self._cache: dict[float, tuple[float, float]] = {}
        # per-kernel asymptotic tables: (coefficients, powers of 1/x)
        self._asym = [self._asymptotic_table(kern) for kern in _kernels(state.parity)]

    @staticmethod
    def _expansion(state: MomentumState, terms: int):
        """Coefficients/exponents of ``u(k) = sum w k**s`` near ``k = 0``."""
        a, b = state.decay_rate, state.decay_exponent
        weights, powers = [], []
        for coef, e in zip(state.poly.coefficients, state.poly.exponents):
            logfact = 0.0
            for m in range(terms):
                if m:
                    logfact += math.log(m)
                weights.append(coef * (-1.0) ** m * math.exp(m * math.log(a) - logfact))
                powers.append(e + b * m)
        return np.array(weights), np.array(powers)

    def _asymptotic_table(self, kern: _Kernel):
        s = self._powers + kern.q
        if kern.trig == "cos":
            tr = _trig_pi((s + 1) / 2.0, "cos")
        else:
            tr = _trig_pi((s + 1) / 2.0, "sin")
        coef = kern.sign * self._weights * tr / math.pi
        logmag = gammaln(s + 1) + np.log(np.abs(np.where(coef == 0, 1.0, coef)))
        keep = coef != 0
        coef, s, logmag = coef[keep], s[keep], logmag[keep]
        if coef.size == 0:
            return coef, s
        # drop terms negligible at the crossover and stop before the series turns
        mag = logmag - (s + 1) * math.log(self.crossover)
        lead = mag.max()
        order = np.argsort(s)
        coef, s, mag = coef[order], s[order], mag[order]
        useful = mag > lead + math.log(_SERIES_FLOOR)
        last = np.nonzero(useful)[0].max()
        return coef[: last + 1], s[: last + 1]

    # -- tails -----------------------------------------------------------
    def tail_power(self, derivative: bool = False) -> float | None:
        """``p`` with ``|A(x)| ~ x**-p`` at large x (None: faster than any power)."""
        coef, s = self._asym[int(derivative)]
        if coef.size == 0:
            return None
        return float(s.min() + 1.0)

    def _asymptotic(self, x: np.ndarray, derivative: bool) -> np.ndarray:
        coef, s = self._asym[int(derivative)]
        ax = np.abs(x)
        out = np.zeros_like(ax)
        if coef.size:
            logx = np.log(ax)
            gl = gammaln(s + 1)
            for c, si, g in zip(coef, s, gl):
                out += c * np.exp(g - (si + 1) * logx)
        return self._reflect(x, out, derivative)

    def _reflect(self, x, values, derivative):
        # A has the parity of the state; A' the opposite one
        odd = (self.state.parity + int(derivative)) % 2
        return np.where(x < 0, -values, values) if odd else values

    # -- discrete sum ----------------------------------------------------
    def _correction(self, x: np.ndarray, kern: _Kernel) -> np.ndarray:
        h = self.h
        ax = np.abs(x)
        xmax = float(ax.max()) if ax.size else 0.0
        keep = np.abs(self._weights) * h ** (self._powers + 1) > 1e-40
        w, s0 = self._weights[keep], self._powers[keep] + kern.q
        out = np.zeros_like(ax)
        start = 0 if kern.trig == "cos" else 1
        for deg in range(start, 400, 2):
            sig = s0 + deg
            z = _zeta_neg(sig) * h ** (sig + 1)
            sgn = (-1.0) ** ((deg - start) // 2)
            lognorm = -math.lgamma(deg + 1)
            term_coef = float(np.sum(w * z)) * sgn
            contribution = term_coef * np.exp(deg * np.log(np.maximum(ax, 1e-300)) + lognorm) \
                if deg else np.full_like(ax, term_coef)
            out += contribution
            bound = abs(term_coef) * math.exp(deg * math.log(max(xmax, 1e-300)) + lognorm) \
                if deg else abs(term_coef)
            if deg > 4 and bound < 1e-19:
                break
        return kern.sign * out

    def _discrete(self, x: np.ndarray, kern: _Kernel) -> np.ndarray:
        ax = np.abs(x)
        weights = self.u * self.k ** kern.q
        trig = np.cos if kern.trig == "cos" else np.sin
        out = np.empty_like(ax)
        step = max(1, _CHUNK // max(1, self.k.size))
        for i in range(0, ax.size, step):
            block = ax[i:i + step]
            out[i:i + step] = trig(np.outer(block, self.k)) @ weights
        out *= kern.sign * self.h
        return (out - self._correction(ax, kern)) / math.pi

    def _core(self, x: np.ndarray):
        """Discrete values for |x| <= crossover, memoized per abscissa."""
        ax = np.abs(x)
        missing = [v for v in np.unique(ax) if float(v) not in self._cache]
        if missing:
            m = np.array(missing)
            k0, k1 = _kernels(self.state.parity)
            a_vals = self._discrete(m, k0)
            d_vals = self._discrete(m, k1)
            for v, av, dv in zip(missing, a_vals, d_vals):
                self._cache[float(v)] = (float(av), float(dv))
        amp = np.array([self._cache[float(v)][0] for v in ax])
        der = np.array([self._cache[float(v)][1] for v in ax])
        return amp, der

    def amplitude(self, x, derivative: bool = False) -> np.ndarray:
        """Real ``A(x)`` (or ``A'(x)``); ``psi = phase * A``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty_like(x)
        inner = np.abs(x) <= self.crossover
        if inner.any():
            amp, der = self._core(x[inner])
            out[inner] = self._reflect(x[inner], der if derivative else amp, derivative)
        if (~inner).any():
            out[~inner] = self._asymptotic(x[~inner], derivative)
        return out

    def discrete_amplitude(self, x, derivative: bool = False) -> np.ndarray:
        """Corrected discrete sum at any ``x`` (no asymptotic switch), for checks."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        kern = _kernels(self.state.parity)[int(derivative)]
        return self._reflect(x, self._discrete(np.abs(x), kern), derivative)

    def asymptotic_amplitude(self, x, derivative: bool = False) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return self._asymptotic(x, derivative)

    def psi(self, x) -> np.ndarray:
        return self.phase * self.amplitude(x)

    def psi_prime(self, x) -> np.ndarray:
        return self.phase * self.amplitude(x, derivative=True)

    def correction(self, x, derivative: bool = False) -> np.ndarray:
        """Euler-Maclaurin correction (already divided by pi), signed by parity."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        kern = _kernels(self.state.parity)[int(derivative)]
        return self._reflect(x, self._correction(np.abs(x), kern) / math.pi, derivative)


@dataclass(frozen=True)
class PositionState:
    x: np.ndarray
    psi: np.ndarray
    psi_prime: np.ndarray
    source: tuple[int, float]
    grid: GridSpec
    norm_check: float = math.nan
    approximate: bool = False
    evaluator: PositionEvaluator | None = field(default=None, repr=False, compare=False)

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.psi) ** 2

    def normalized(self, momentum: MomentumState) -> "PositionState":
        """Scale to unit probability, recording the Parseval ratio."""
        ratio = parseval_ratio(self, momentum)
        mass = _position_mass(self)
        c = 1.0 / math.sqrt(mass)
        return PositionState(self.x, self.psi * c, self.psi_prime * c, self.source,
                             self.grid, ratio, self.approximate, self.evaluator)


def _phi_samples(state: MomentumState, grid: GridSpec, derivative: bool) -> np.ndarray:
    k = grid.k()
    r = np.abs(k)
    vals = np.zeros(k.size, dtype=complex)
    nz = r > 0
    u = state.amplitude(r[nz])
    if state.parity:
        u = np.sign(k[nz]) * u
    vals[nz] = state.phase * u
    if derivative:
        vals = 1j * k * vals
    return vals


def _ifft_continuum(samples: np.ndarray, grid: GridSpec) -> np.ndarray:
    # centred grids on both sides: shift index N/2 (k = 0, x = 0) to slot 0
    n = grid.points
    return np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(samples))) * (n * grid.dk / (2 * math.pi))


def inverse_fourier(state: MomentumState, grid: GridSpec | None = None,
                    crossover: float = CROSSOVER) -> PositionState:
    """Sample ``psi`` and ``psi'`` on the reciprocal position grid.

    The FFT realizes the trapezoid sum of the continuum integral on the
    centred grid (the k = 0 sample is left out); the Euler-Maclaurin series
    restores the continuum value for ``|x| <= crossover`` and the asymptotic
    series supplies the tails.  Regularized states are transformed by the
    plain FFT and flagged ``approximate``.
    """
    require_normalizable(state)
    grid = grid if grid is not None else GridSpec.for_state(state)
    x = grid.x()
    if state.regularization is not None:
        eps = state.regularization
        phi = _phi_samples(state, grid, False)
        dphi = _phi_samples(state, grid, True)
        del eps
        return PositionState(x, _ifft_continuum(phi, grid), _ifft_continuum(dphi, grid),
                             (state.n, state.alpha), grid, approximate=True)
    ev = PositionEvaluator(state, grid, crossover)
    psi = _ifft_continuum(_phi_samples(state, grid, False), grid)
    dpsi = _ifft_continuum(_phi_samples(state, grid, True), grid)
    inner = np.abs(x) <= crossover
    psi[inner] -= ev.phase * ev.correction(x[inner])
    dpsi[inner] -= ev.phase * ev.correction(x[inner], derivative=True)
    outer = ~inner
    psi[outer] = ev.phase * ev.asymptotic_amplitude(x[outer])
    dpsi[outer] = ev.phase * ev.asymptotic_amplitude(x[outer], derivative=True)
    return PositionState(x, psi, dpsi, (state.n, state.alpha), grid, evaluator=ev)


def spectral_derivative(state: MomentumState, grid: GridSpec | None = None) -> np.ndarray:
    """Samples of ``psi'`` (inverse transform of ``ik phi``)."""
    return inverse_fourier(state, grid).psi_prime


def _position_mass(position: PositionState) -> float:
    """Trapezoid over the symmetric part of the grid plus the analytic tails."""
    x, rho = position.x, position.density
    edge = -x[0] - position.grid.dx  # largest |x| present on both sides
    sel = np.abs(x) <= edge + 1e-9 * position.grid.dx
    w = np.full(sel.sum(), position.grid.dx)
    w[0] *= 0.5
    w[-1] *= 0.5
    total = math.fsum(w * rho[sel])
    ev = position.evaluator
    if ev is not None:
        p = ev.tail_power()
        if p is not None:
            res = integrate_tail(lambda t: ev.asymptotic_amplitude(t) ** 2, edge,
                                 1e-16, decay=2 * p, rel_tol=1e-12)
            scale = np.abs(position.psi[sel][-1]) ** 2 / max(
                float(ev.asymptotic_amplitude(np.array([edge]))[0] ** 2), 1e-300)
            total += 2.0 * res.value * scale
    return total


def momentum_mass(state: MomentumState, tol: float = DEFAULT_TOL) -> float:
    """``int |phi(k)|^2 dk`` over the line."""
    require_normalizable(state)
    lo = state.regularization or 0.0
    hints = [] if state.regularization else [SingularityHint(0.0, 2 * state.min_exponent())]
    cut = envelope_kmax(state, 1e-20)
    res = integrate(lambda r: state.amplitude(r) ** 2, lo, cut, tol, hints, rel_tol=tol)
    return 2.0 * res.value


def parseval_ratio(position: PositionState, momentum: MomentumState) -> float:
    """``int |psi|^2 dx / ((1/2pi) int |phi|^2 dk)``; 1 for an exact transform."""
    return _position_mass(position) / (momentum_mass(momentum) / (2 * math.pi))

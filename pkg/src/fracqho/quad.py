"""Adaptive Gauss-Kronrod quadrature with algebraic endpoint singularities.

Every integral in the package goes through :func:`integrate` (finite
intervals), :func:`integrate_tail` (``[a, inf)``) or
:func:`integrate_semiinfinite` (the whole line, folded by symmetry).

Integrands are vectorized: they receive a 1-D ``numpy`` array of abscissae
and must return an array of the same shape.

A :class:`SingularityHint` ``(c, p)`` declares ``f(t) ~ |t - c|**p`` near
``c``.  Panels adjacent to a hint are integrated in the variable ``v`` with
``t = c +/- L * v**(1/(1+p))``, which turns the leading power into a constant.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

Integrand = Callable[[np.ndarray], np.ndarray]

DEFAULT_TOL = 1e-10
FISHER_TOL = 1e-8
MAX_PANELS = 2**15

# 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525634120,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
GAUSS_WEIGHTS = np.zeros(21)
# Gauss nodes sit at odd positions of the descending Kronrod list.
for _i, _w in enumerate(_WG):
    GAUSS_WEIGHTS[2 * _i + 1] = _w
    GAUSS_WEIGHTS[19 - 2 * _i] = _w

_EPS = np.finfo(float).eps


class QuadratureError(ArithmeticError):
    """Base class for quadrature failures."""


class NonIntegrable(QuadratureError):
    """A declared singularity is not integrable (exponent <= -1)."""


class NonConvergent(QuadratureError):
    """The error target was not met within the panel budget.

    Attributes
    ----------
    value, error_estimate : float
        Partial result at the point of giving up.
    evaluations : int
    """

    def __init__(self, message: str, value: float, error_estimate: float,
                 evaluations: int):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
        self.evaluations = evaluations


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool
    tolerance: float = math.nan


@dataclass(frozen=True)
class SingularityHint:
    """Integrand behaves like ``|t - location|**exponent`` near ``location``."""

    location: float
    exponent: float

    def __post_init__(self):
        if not self.exponent > -1.0:
            raise NonIntegrable(
                f"singularity at {self.location} with exponent {self.exponent} "
                "is not integrable")


@dataclass(frozen=True)
class _Segment:
    lo: float
    hi: float
    power: float        # v -> t map exponent q = 1/(1+p); 1.0 means identity
    anchor: str         # 'left', 'right' or 'none'

    def to_t(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Map panel coordinates v to abscissae t, returning (t, dt/dv)."""
        if self.anchor == "none":
            return v, np.ones_like(v)
        length = self.hi - self.lo
        q = self.power
        vq = v ** q
        jac = length * q * v ** (q - 1.0)
        if self.anchor == "left":
            return self.lo + length * vq, jac
        return self.hi - length * vq, jac

    def domain(self) -> tuple[float, float]:
        if self.anchor == "none":
            return self.lo, self.hi
        return 0.0, 1.0


def _segments(a: float, b: float, hints: Sequence[SingularityHint]) -> list[_Segment]:
    by_loc: dict[float, float] = {}
    for h in hints:
        if not a <= h.location <= b:
            raise ValueError(f"hint at {h.location} lies outside [{a}, {b}]")
        by_loc[h.location] = min(h.exponent, by_loc.get(h.location, h.exponent))
    cuts = sorted({a, b, *by_loc})
    segs: list[_Segment] = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        left = by_loc.get(lo)
        right = by_loc.get(hi)
        if left is not None and right is not None:
            mid = 0.5 * (lo + hi)
            segs.append(_Segment(lo, mid, 1.0 / (1.0 + left), "left"))
            segs.append(_Segment(mid, hi, 1.0 / (1.0 + right), "right"))
        elif left is not None:
            segs.append(_Segment(lo, hi, 1.0 / (1.0 + left), "left"))
        elif right is not None:
            segs.append(_Segment(lo, hi, 1.0 / (1.0 + right), "right"))
        else:
            segs.append(_Segment(lo, hi, 1.0, "none"))
    return segs


def _rule(f: Integrand, segs: list[_Segment], panels: list[tuple[int, float, float]]):
    """Apply GK21 to a batch of panels with a single integrand call."""
    npan = len(panels)
    centers = np.array([0.5 * (p[1] + p[2]) for p in panels])
    halves = np.array([0.5 * (p[2] - p[1]) for p in panels])
    v = centers[:, None] + halves[:, None] * NODES[None, :]
    t = np.empty_like(v)
    jac = np.empty_like(v)
    for i, (sid, _, _) in enumerate(panels):
        t[i], jac[i] = segs[sid].to_t(v[i])
    fv = np.asarray(f(t.ravel()), dtype=float).reshape(npan, 21) * jac
    if not np.all(np.isfinite(fv)):
        bad = t[~np.isfinite(fv)][:3]
        raise QuadratureError(f"integrand is not finite at t = {bad.tolist()}")
    kron = (fv @ KRONROD_WEIGHTS) * halves
    gauss = (fv @ GAUSS_WEIGHTS) * halves
    resabs = (np.abs(fv) @ KRONROD_WEIGHTS) * np.abs(halves)
    err = np.maximum(np.abs(kron - gauss), 50.0 * _EPS * resabs)
    return kron, err


def integrate(f: Integrand, a: float, b: float, tol: float = DEFAULT_TOL,
              hints: Sequence[SingularityHint] = (), *,
              rel_tol: float = DEFAULT_TOL, limit: int = MAX_PANELS,
              strict: bool = True) -> QuadratureResult:
    """Globally adaptive GK21 quadrature of ``f`` over ``[a, b]``.

    Converged means ``error_estimate <= tol + rel_tol * |value|``.  With
    ``strict`` (default) failure raises :class:`NonConvergent`; otherwise the
    partial result is returned with ``converged=False``.
    """
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise ValueError(f"need finite a < b, got [{a}, {b}]")
    if not tol > 0:
        raise ValueError("tol must be positive")
    segs = _segments(float(a), float(b), hints)

    panels = [(i, *s.domain()) for i, s in enumerate(segs)]
    vals, errs = _rule(f, segs, panels)
    evaluations = 21 * len(panels)
    # heap of (-err, tiebreak, panel, value); tiebreak keeps ordering deterministic
    heap = [(-e, k, p, v) for k, (p, v, e) in enumerate(zip(panels, vals, errs))]
    heapq.heapify(heap)
    counter = len(heap)
    frozen: list[tuple[float, float]] = []

    def totals():
        value = math.fsum([h[3] for h in heap] + [fz[0] for fz in frozen])
        error = math.fsum([-h[0] for h in heap] + [fz[1] for fz in frozen])
        return value, error

    value, error = totals()
    target = tol + rel_tol * abs(value)
    while error > target and heap:
        if len(heap) + len(frozen) >= limit:
            break
        # bisect the worst panels until the remaining error would meet the target
        budget = min(256, limit - len(heap) - len(frozen))
        chosen = []
        remaining = error
        while heap and len(chosen) < budget and remaining > 0.5 * target:
            item = heapq.heappop(heap)
            remaining += item[0]
            chosen.append(item)
        new_panels = []
        for neg_err, _, (sid, lo, hi), v in chosen:
            mid = 0.5 * (lo + hi)
            if not lo < mid < hi:
                frozen.append((v, -neg_err))
                continue
            new_panels.append((sid, lo, mid))
            new_panels.append((sid, mid, hi))
        if not new_panels:
            break
        nv, ne = _rule(f, segs, new_panels)
        evaluations += 21 * len(new_panels)
        for p, v, e in zip(new_panels, nv, ne):
            heapq.heappush(heap, (-e, counter, p, v))
            counter += 1
        value, error = totals()
        target = tol + rel_tol * abs(value)

    converged = error <= target
    if not converged and strict:
        raise NonConvergent(
            f"quadrature on [{a}, {b}] did not converge: estimate {error:.3e} "
            f"> target {target:.3e} after {evaluations} evaluations",
            value, error, evaluations)
    return QuadratureResult(value, error, evaluations, converged, target)


def tail_cutoff(alpha: float, floor: float = 1e-18) -> float:
    """Abscissa where the envelope ``exp(-2 t**(alpha/2+1)/(alpha+2))`` drops below ``floor``."""
    rate = 2.0 / (alpha + 2.0)
    return (-math.log(floor) / rate) ** (1.0 / (alpha / 2.0 + 1.0))


def integrate_tail(f: Integrand, a: float, tol: float = DEFAULT_TOL, *,
                   decay: float | None = None, rel_tol: float = DEFAULT_TOL,
                   limit: int = MAX_PANELS, strict: bool = True) -> QuadratureResult:
    """Integrate ``f`` over ``[a, inf)``.

    With ``decay=p`` (``f ~ t**-p``, ``p > 1``, ``a > 0``) the substitution
    ``t = a * v**(-1/(p-1))`` maps the power law to a bounded integrand on
    ``(0, 1]``.  Without it the rational map ``t = a + u/(1-u)`` is used.
    """
    if decay is not None:
        if not decay > 1.0:
            raise NonIntegrable(f"tail decay t^-{decay} is not integrable")
        if not a > 0:
            raise ValueError("power-law tail map needs a > 0")
        r = 1.0 / (decay - 1.0)

        def g(v):
            t = a * v ** (-r)
            return f(t) * (a * r) * v ** (-r - 1.0)
    else:
        def g(u):
            s = 1.0 - u
            return f(a + u / s) / (s * s)
    return integrate(g, 0.0, 1.0, tol, rel_tol=rel_tol, limit=limit, strict=strict)


def integrate_semiinfinite(f: Integrand, tol: float = DEFAULT_TOL,
                           hints: Sequence[SingularityHint] = (), *,
                           symmetry: str = "even", tail: str = "map",
                           cutoff: float | None = None, alpha: float | None = None,
                           rel_tol: float = DEFAULT_TOL, limit: int = MAX_PANELS,
                           strict: bool = True) -> QuadratureResult:
    """Integrate a symmetric integrand over the whole real line.

    ``symmetry='odd'`` returns 0 without evaluating ``f``.  For even
    integrands the line is folded onto ``[0, inf)`` and the tail is either
    mapped (``tail='map'``) or truncated (``tail='truncate'``) at ``cutoff``,
    which defaults to the point where the oscillator envelope for ``alpha``
    falls below 1e-18.  Hints must lie in ``[0, cutoff]``.
    """
    if symmetry == "odd":
        return QuadratureResult(0.0, 0.0, 0, True, tol)
    if symmetry != "even":
        raise ValueError(f"unknown symmetry {symmetry!r}")
    if tail == "truncate":
        if cutoff is None:
            if alpha is None:
                raise ValueError("truncation needs a cutoff or alpha")
            cutoff = tail_cutoff(alpha)
        res = integrate(f, 0.0, cutoff, tol / 2, hints, rel_tol=rel_tol,
                        limit=limit, strict=strict)
        return QuadratureResult(2 * res.value, 2 * res.error_estimate,
                                res.evaluations, res.converged, 2 * res.tolerance)
    if tail != "map":
        raise ValueError(f"unknown tail mode {tail!r}")
    # split at 1 so hints near the origin keep their own panel
    split = max([1.0] + [2.0 * h.location for h in hints])
    head = integrate(f, 0.0, split, tol / 4, hints, rel_tol=rel_tol,
                     limit=limit, strict=strict)
    rest = integrate_tail(f, split, tol / 4, rel_tol=rel_tol, limit=limit,
                          strict=strict)
    value = 2 * (head.value + rest.value)
    err = 2 * (head.error_estimate + rest.error_estimate)
    return QuadratureResult(value, err, head.evaluations + rest.evaluations,
                            head.converged and rest.converged,
                            2 * (head.tolerance + rest.tolerance))

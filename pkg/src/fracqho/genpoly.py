"""Generalized polynomials in |k| and the fractional oscillator momentum states.

A :class:`GeneralizedPolynomial` is ``sgn(k)**parity * sum_j c_j |k|**e_j`` with
real exponents.  Exponents are stored as exact affine forms
``slope * alpha + offset`` (rational slope/offset) so that like terms are
merged by exact comparison; coefficients are floats evaluated at one alpha.

The Riesz-Feller Hermite polynomials come from the ladder recurrence

    H_0 = 1,    H_{n+1}(k) = 2 sgn(k) |k|**(alpha/2) H_n(k) - H_n'(k),

and :func:`rodrigues_oracle` rebuilds them independently from the n-th
derivative of ``exp(-G)``, ``G = 2|k|**(alpha/2+1)/(alpha/2+1)``, using
complete Bell polynomials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

import numpy as np

PRUNE_RTOL = 1e-14
HALF = Fraction(1, 2)


class DomainError(ValueError):
    """Levy index or quantum number outside the admissible range."""


class SingularPointError(ArithmeticError):
    """Pointwise evaluation at k = 0 of a term with a negative exponent.

    Non-fatal: quadrature code catches it and switches to hinted panels.
    """

    def __init__(self, exponent: float):
        super().__init__(f"state is singular at k = 0 (|k|^{exponent:g})")
        self.exponent = exponent


def check_alpha(alpha: float, *, strict: bool = True) -> float:
    """Validate the Levy index: ``(1, 2]``, or ``[1, 2]`` with ``strict=False``."""
    alpha = float(alpha)
    ok = (1.0 < alpha <= 2.0) if strict else (1.0 <= alpha <= 2.0)
    if not ok:
        bound = "(1, 2]" if strict else "[1, 2]"
        raise DomainError(f"Levy index alpha={alpha} outside {bound}")
    return alpha


def _check_n(n: int) -> int:
    if int(n) != n or n < 0:
        raise DomainError(f"quantum number must be a non-negative integer, got {n}")
    return int(n)


@dataclass(frozen=True)
class Term:
    """``coef * |k|**(slope*alpha + offset)``."""

    coef: float
    slope: Fraction
    offset: Fraction

    @property
    def key(self) -> tuple[Fraction, Fraction]:
        return (self.slope, self.offset)

    def exponent(self, alpha: float) -> float:
        return float(self.slope) * alpha + float(self.offset)


@dataclass(frozen=True)
class GeneralizedPolynomial:
    alpha: float
    terms: tuple[Term, ...]
    parity: int

    @classmethod
    def build(cls, alpha: float, terms: Iterable[Term], parity: int) -> "GeneralizedPolynomial":
        """Canonicalize: merge like exponents, prune zeros, sort descending."""
        merged: dict[tuple[Fraction, Fraction], float] = {}
        scale: dict[tuple[Fraction, Fraction], float] = {}
        for t in terms:
            merged[t.key] = merged.get(t.key, 0.0) + t.coef
            scale[t.key] = scale.get(t.key, 0.0) + abs(t.coef)
        # affine forms that coincide numerically at this alpha are one monomial
        by_value: dict[float, tuple[Fraction, Fraction]] = {}
        for key in list(merged):
            e = float(key[0]) * alpha + float(key[1])
            other = by_value.get(e)
            if other is None:
                by_value[e] = key
            else:
                merged[other] += merged.pop(key)
                scale[other] += scale.pop(key)
        # prune cancellation residue only: a small coefficient that is not the
        # remnant of a sum (e.g. alpha/2 - 1 just below alpha = 2) is a real term
        kept = [
            Term(c, *key) for key, c in merged.items()
            if c != 0.0 and abs(c) > PRUNE_RTOL * scale[key]
        ]
        kept.sort(key=lambda t: t.exponent(alpha), reverse=True)
        return cls(float(alpha), tuple(kept), int(parity) % 2)

    @classmethod
    def monomial(cls, alpha: float, coef: float, slope, offset, parity: int = 0):
        return cls.build(alpha, [Term(float(coef), Fraction(slope), Fraction(offset))], parity)

    # -- inspection ---------------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([t.coef for t in self.terms])

    @property
    def exponents(self) -> np.ndarray:
        return np.array([t.exponent(self.alpha) for t in self.terms])

    def min_exponent(self) -> float:
        if not self.terms:
            raise ValueError("empty polynomial has no exponents")
        return self.terms[-1].exponent(self.alpha)

    def max_exponent(self) -> float:
        if not self.terms:
            raise ValueError("empty polynomial has no exponents")
        return self.terms[0].exponent(self.alpha)

    # -- evaluation ---------------------------------------------------------
    def radial(self, r) -> np.ndarray:
        """Value of ``sum c_j r**e_j`` for ``r > 0`` (sign factor excluded)."""
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for t in self.terms:
            out = out + t.coef * r ** t.exponent(self.alpha)
        return out

    def __call__(self, k) -> np.ndarray:
        """Signed evaluation, ``k != 0``."""
        k = np.asarray(k, dtype=float)
        val = self.radial(np.abs(k))
        if self.parity:
            val = np.sign(k) * val
        return val

    # -- algebra ------------------------------------------------------------
    def _same(self, other: "GeneralizedPolynomial"):
        if other.alpha != self.alpha:
            raise ValueError("polynomials built for different alpha")

    def __add__(self, other: "GeneralizedPolynomial") -> "GeneralizedPolynomial":
        self._same(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        if other.parity != self.parity:
            raise ValueError("cannot add polynomials of different parity")
        return self.build(self.alpha, self.terms + other.terms, self.parity)

    def __neg__(self) -> "GeneralizedPolynomial":
        return self.scale(-1.0)

    def __sub__(self, other: "GeneralizedPolynomial") -> "GeneralizedPolynomial":
        return self + (-other)

    def scale(self, c: float) -> "GeneralizedPolynomial":
        return self.build(self.alpha, [replace(t, coef=c * t.coef) for t in self.terms],
                          self.parity)

    def __mul__(self, other: "GeneralizedPolynomial") -> "GeneralizedPolynomial":
        self._same(other)
        prods = [
            Term(a.coef * b.coef, a.slope + b.slope, a.offset + b.offset)
            for a in self.terms for b in other.terms
        ]
        return self.build(self.alpha, prods, self.parity + other.parity)

    def shift(self, slope, offset, odd: bool = False) -> "GeneralizedPolynomial":
        """Multiply by ``|k|**(slope*alpha+offset)``, times ``sgn(k)`` if ``odd``."""
        ds, do = Fraction(slope), Fraction(offset)
        return self.build(
            self.alpha,
            [Term(t.coef, t.slope + ds, t.offset + do) for t in self.terms],
            self.parity + int(odd))


def differentiate(poly: GeneralizedPolynomial) -> GeneralizedPolynomial:
    """Power-rule derivative on ``k > 0``; the sign parity flips."""
    out = [
        Term(t.coef * t.exponent(poly.alpha), t.slope, t.offset - 1)
        for t in poly.terms
    ]
    return GeneralizedPolynomial.build(poly.alpha, out, poly.parity + 1)


def hermite_tilde(n: int, alpha: float, *, strict: bool = True) -> GeneralizedPolynomial:
    """Riesz-Feller Hermite polynomial by the ladder recurrence."""
    n = _check_n(n)
    alpha = check_alpha(alpha, strict=strict)
    h = GeneralizedPolynomial.monomial(alpha, 1.0, 0, 0)
    for _ in range(n):
        h = h.shift(HALF, 0, odd=True).scale(2.0) - differentiate(h)
    return h


def rodrigues_oracle(n: int, alpha: float, *, strict: bool = True) -> GeneralizedPolynomial:
    """``(-1)**n sgn(k)**n exp(G) d^n/dk^n exp(-G)`` via complete Bell polynomials.

    ``G(k) = 2|k|**b / b`` with ``b = alpha/2 + 1``, so
    ``G^(i)(k) = 2 (b-1)(b-2)...(b-i+1) |k|**(b-i)`` (with sign parity i).
    ``Y_{m+1} = sum_i C(m, i) Y_{m-i} x_{i+1}`` with ``x_i = -G^(i)``.
    """
    n = _check_n(n)
    alpha = check_alpha(alpha, strict=strict)
    b = alpha / 2.0 + 1.0
    xs = [None]
    for i in range(1, n + 1):
        falling = math.prod(b - j for j in range(1, i))
        xs.append(GeneralizedPolynomial.monomial(alpha, -2.0 * falling, HALF, 1 - i, parity=i))
    bell = [GeneralizedPolynomial.monomial(alpha, 1.0, 0, 0)]
    for m in range(n):
        acc = GeneralizedPolynomial.build(alpha, [], m + 1)
        for i in range(m + 1):
            acc = acc + (bell[m - i] * xs[i + 1]).scale(float(math.comb(m, i)))
        bell.append(acc)
    return bell[n].scale((-1.0) ** n)


@dataclass(frozen=True)
class MomentumState:
    """``phi_n(k) = (-i)**n * H_n(k) * exp(-decay_rate |k|**decay_exponent)``.

    ``regularization`` (if set) zeroes the state for ``|k| < epsilon``.
    """

    n: int
    alpha: float
    poly: GeneralizedPolynomial
    decay_exponent: float
    decay_rate: float
    norm: float | None = None
    imaginary_flag: bool = False
    regularization: float | None = None

    @property
    def parity(self) -> int:
        return self.poly.parity

    @property
    def phase(self) -> complex:
        return (-1j) ** self.n

    def min_exponent(self) -> float:
        return self.poly.min_exponent()

    @property
    def normalizable(self) -> bool:
        return self.regularization is not None or 2.0 * self.min_exponent() > -1.0

    def envelope(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.exp(-self.decay_rate * r ** self.decay_exponent)

    def amplitude(self, r) -> np.ndarray:
        """Real radial profile ``u(r) = sum c_j r**e_j exp(-a r**b)``, ``r > 0``."""
        r = np.asarray(r, dtype=float)
        u = self.poly.radial(r) * self.envelope(r)
        if self.regularization is not None:
            u = np.where(r < self.regularization, 0.0, u)
        return u

    def log_abs_amplitude(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.poly.radial(r))) - self.decay_rate * r ** self.decay_exponent

    def amplitude_derivative_poly(self) -> GeneralizedPolynomial:
        """``Q`` with ``u'(r) = Q(r) exp(-a r**b)``; note ``a*b = 1`` so ``(a r**b)' = r**(alpha/2)``."""
        return differentiate(self.poly) - self.poly.shift(HALF, 0, odd=True)

    def with_norm(self, norm: float) -> "MomentumState":
        return replace(self, norm=float(norm))

    def regularized(self, epsilon: float) -> "MomentumState":
        if not epsilon > 0:
            raise ValueError("regularization epsilon must be positive")
        return replace(self, regularization=float(epsilon), norm=None)

    def __call__(self, k) -> np.ndarray:
        return evaluate(self, k)


def momentum_state(n: int, alpha: float, *, strict: bool = True) -> MomentumState:
    n = _check_n(n)
    alpha = check_alpha(alpha, strict=strict)
    return MomentumState(
        n=n,
        alpha=alpha,
        poly=hermite_tilde(n, alpha, strict=strict),
        decay_exponent=alpha / 2.0 + 1.0,
        decay_rate=2.0 / (alpha + 2.0),
        imaginary_flag=bool(n % 2),
    )


def evaluate(state: MomentumState, k):
    """Complex value of the (unnormalized) state at ``k``.

    At ``k = 0`` the value is 0 if every exponent is positive and the constant
    term if the lowest exponent is 0; a negative exponent raises
    :class:`SingularPointError`.  Negative ``k`` uses the parity relation.
    """
    k_arr = np.asarray(k, dtype=float)
    scalar = k_arr.ndim == 0
    k_arr = np.atleast_1d(k_arr)
    if not np.all(np.isfinite(k_arr)):
        raise ValueError("k must be finite")
    r = np.abs(k_arr)
    at_origin = r == 0.0
    out = np.zeros(k_arr.shape, dtype=complex)
    if at_origin.any() and state.poly.terms:
        e0 = state.min_exponent()
        if e0 < 0 and state.regularization is None:
            raise SingularPointError(e0)
        if e0 == 0 and state.parity == 0 and state.regularization is None:
            out[at_origin] = state.phase * state.poly.terms[-1].coef
    nz = ~at_origin
    vals = state.amplitude(r[nz]).astype(complex) * state.phase
    if state.parity:
        vals = np.where(k_arr[nz] < 0, -vals, vals)
    out[nz] = vals
    return complex(out[0]) if scalar else out


def min_exponent(state: MomentumState) -> float:
    return state.min_exponent()

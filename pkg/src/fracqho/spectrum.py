"""Fractional oscillator energy levels and the Bohr-Sommerfeld action check."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .genpoly import DomainError, check_alpha
from .quad import SingularityHint, integrate


@dataclass(frozen=True)
class Units:
    hbar: float = 1.0
    m: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "m", "omega"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def levy_coefficient(self, alpha: float) -> float:
        """``D_alpha = (1/(2m))**(alpha/2)`` of the fractional kinetic term.

        Kept as a units note only; the energy formula and the action
        integral both use ``|p|**alpha / (2m)``.
        """
        return (1.0 / (2.0 * self.m)) ** (alpha / 2.0)


DEFAULT_UNITS = Units()


def log_gamma(z: float) -> float:
    if not z > 0:
        raise DomainError(f"log_gamma needs z > 0, got {z}")
    return math.lgamma(z)


def beta(a: float, b: float) -> float:
    if not (a > 0 and b > 0):
        raise DomainError(f"beta needs positive arguments, got ({a}, {b})")
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def energy_level(n: int, alpha: float, units: Units = DEFAULT_UNITS) -> float:
    """Bohr-Sommerfeld energy of level ``n``; alpha in ``[1, 2]``."""
    if int(n) != n or n < 0:
        raise DomainError(f"quantum number must be a non-negative integer, got {n}")
    alpha = check_alpha(alpha, strict=False)
    power = 2.0 * alpha / (2.0 + alpha)
    denom = (2.0 ** (0.5 + 1.0 / alpha) * units.m ** (1.0 / alpha - 0.5)
             * beta(0.5, 1.0 / alpha + 1.0))
    if alpha == 2.0:
        # B(1/2, 3/2) = pi/2 exactly; lgamma round-off would leave one ulp
        return units.hbar * units.omega * (n + 0.5)
    return (math.pi / denom) ** power * (units.hbar * units.omega * (n + 0.5)) ** power


def action_integral(E: float, alpha: float, units: Units = DEFAULT_UNITS,
                    tol: float = 1e-13) -> float:
    """Closed-orbit action ``4 * int_0^xt (2mE - m^2 w^2 x^2)**(1/alpha) dx``.

    The integrand vanishes like ``(xt - x)**(1/alpha)`` at the turning point
    ``xt = sqrt(2E/m)/w``; that endpoint is passed to the quadrature as a
    singularity hint.
    """
    if not E > 0:
        raise DomainError(f"energy must be positive, got {E}")
    alpha = check_alpha(alpha, strict=False)
    m, w = units.m, units.omega
    xt = math.sqrt(2.0 * E / m) / w
    inv = 1.0 / alpha

    def momentum(x):
        # factored form keeps the endpoint zero exact
        return (m * w) ** (2 * inv) * ((xt - x) * (xt + x)) ** inv

    res = integrate(momentum, 0.0, xt, tol * max(1.0, E),
                    hints=[SingularityHint(xt, inv)], rel_tol=tol)
    return 4.0 * res.value


@dataclass(frozen=True)
class SpectrumTable:
    entries: tuple[tuple[int, float, float], ...]
    units: Units = field(default_factory=Units)

    def energies(self, alpha: float) -> list[float]:
        return [e for (_, a, e) in self.entries if a == alpha]


def spectrum_table(ns, alphas, units: Units = DEFAULT_UNITS) -> SpectrumTable:
    rows = [(int(n), float(a), energy_level(n, a, units))
            for a in alphas for n in sorted(ns)]
    rows.sort(key=lambda r: (r[0], r[1]))
    return SpectrumTable(tuple(rows), units)

"""Independent references: closed-form low states and brute-force integration.

Nothing here calls the recurrence, the quadrature module or the transform.
"""
import math

import numpy as np


def decay(k, alpha):
    return np.exp(-2.0 * np.abs(k) ** (alpha / 2 + 1) / (alpha + 2))


def closed_form(n, alpha):
    """``(u, u')`` on ``k > 0`` for n <= 2, written out by hand."""
    h = alpha / 2

    if n == 0:
        def u(k):
            return decay(k, alpha)

        def du(k):
            return -k**h * decay(k, alpha)
    elif n == 1:
        def u(k):
            return 2 * k**h * decay(k, alpha)

        def du(k):
            return (alpha * k ** (h - 1) - 2 * k**alpha) * decay(k, alpha)
    elif n == 2:
        def u(k):
            return (4 * k**alpha - alpha * k ** (h - 1)) * decay(k, alpha)

        def du(k):
            poly = (4 * alpha * k ** (alpha - 1) - alpha * (h - 1) * k ** (h - 2)
                    - 4 * k ** (3 * h) + alpha * k ** (alpha - 1))
            return poly * decay(k, alpha)
    else:
        raise ValueError(n)
    return u, du


def graded_integral(f, upper, points=10**7, grading=8, chunk=10**6):
    """Midpoint rule on ``t = upper * s**grading``, ``s`` uniform: brute force near 0."""
    total = []
    ds = 1.0 / points
    for start in range(0, points, chunk):
        s = (np.arange(start, min(points, start + chunk)) + 0.5) * ds
        t = upper * s**grading
        w = upper * grading * s ** (grading - 1) * ds
        total.append(np.sum(f(t) * w))
    return math.fsum(total)


def brute_measures(n, alpha, upper=40.0, points=10**7):
    """Normalized momentum measures from the closed form, by brute force.

    Divergent functionals are returned as ``inf`` (decided from the exponents).
    """
    u, du = closed_form(n, alpha)
    lowest = {0: 0.0, 1: alpha / 2, 2: alpha / 2 - 1}[n]
    mass = 2 * graded_integral(lambda k: u(k) ** 2, upper, points)
    rho = lambda k: u(k) ** 2 / mass  # noqa: E731

    def plogp(k):
        r = rho(k)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(r > 1e-300, r * np.log(r), 0.0)

    out = {"mass": mass}
    fisher_divergent = n == 2 and alpha < 2
    out["F"] = math.inf if fisher_divergent else \
        2 * graded_integral(lambda k: 4 * du(k) ** 2, upper, points) / mass
    out["S"] = -2 * graded_integral(plogp, upper, points)
    out["D"] = math.inf if 4 * lowest <= -1 else 2 * graded_integral(lambda k: rho(k) ** 2, upper, points)
    out["variance"] = 2 * graded_integral(lambda k: k * k * rho(k), upper, points)
    return out


def gaussian_profile_values():
    """Analytic measures of ``exp(-k^2)/sqrt(pi)`` (variance 1/2)."""
    S = 0.5 * (1 + math.log(math.pi))
    return {"F": 2.0, "S": S, "D": 1 / math.sqrt(2 * math.pi), "C": math.sqrt(math.e / 2),
            "P": math.exp(2 * S / 3) / (2 * math.pi * math.e) * 2.0, "P1": 1.0, "variance": 0.5}

"""Reference LMC complexity ``C`` and Fisher-Shannon ``P`` values (reconciliation targets).

Keys are ``(n, alpha)``.  The ``n = 3`` column starts at ``alpha = 1.25``.
"""
from __future__ import annotations

ALPHAS_N012 = (1.0, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0)
ALPHAS_N3 = (1.25, 1.3, 1.35, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0)

_C = {
    0: (2.7126, 2.5931, 2.5459, 2.5059, 2.4718, 2.4429, 2.4190, 2.3993, 2.3832, 2.3704),
    1: (1.8855, 1.5004, 1.2972, 1.1041, 0.9278, 0.7715, 0.6361, 0.5208, 0.4241, 0.3439),
    2: (2.8444e-05, 0.0108, 0.0215, 0.0288, 0.0313, 0.0300, 0.0264, 0.0218, 0.0171, 0.0129),
    3: (2.0319e-04, 9.3262e-06, 1.4391e-05, 1.9213e-05, 1.5892e-05, 1.7154e-05,
        1.1981e-05, 7.0477e-06, 3.8307e-06, 1.9994e-06),
}
_P = {
    0: (0.0159, 0.0151, 0.0147, 0.0144, 0.0141, 0.0138, 0.0136, 0.0134, 0.0132, 0.0129),
    1: (0.0273, 0.0268, 0.0262, 0.0255, 0.0245, 0.0235, 0.0225, 0.0214, 0.0203, 0.0193),
    2: (0.0001, 0.0024, 0.0040, 0.0054, 0.0057, 0.0063, 0.0066, 0.0069, 0.0070, 0.0070),
    3: (0.0021, 0.0005, 0.0006, 0.0007, 0.0006, 0.0007, 0.0006, 0.0005, 0.0005, 0.0003),
}


def _alphas(n: int) -> tuple[float, ...]:
    return ALPHAS_N3 if n == 3 else ALPHAS_N012


TARGETS: dict[tuple[int, float], tuple[float, float]] = {
    (n, a): (c, p)
    for n in _C
    for a, c, p in zip(_alphas(n), _C[n], _P[n])
}


def cells(ns=(0, 1, 2, 3)) -> list[tuple[int, float]]:
    """Target cells for the requested quantum numbers, sorted by ``(n, alpha)``."""
    return sorted(key for key in TARGETS if key[0] in set(ns))

"""How far the factorization states are from eigenstates of |k|^alpha - d^2/dk^2.

Prints Rayleigh quotients, residual norms and the overlap matrix with the
finite-difference eigenvectors for a few alpha values.
Usage: python scripts/eigen_diagnostics.py
"""
import warnings
from dataclasses import dataclass

import numpy as np

from fracqho.genpoly import momentum_state
from fracqho.refsolver import KGrid, diagonalize, eigen_residual, overlaps


@dataclass
class EigenRun:
    alphas: tuple = (1.2, 1.5, 1.8, 2.0)
    k_max: float = 20.0
    points: int = 8192
    nmax: int = 3


def main(run: EigenRun) -> None:
    grid = KGrid(run.k_max, run.points)
    np.set_printoptions(precision=6, suppress=True)
    for a in run.alphas:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = diagonalize(a, run.k_max, run.points, count=run.nmax + 1)
        print(f"alpha={a}: eigenvalues {res.eigenvalues}")
        for n in range(run.nmax + 1):
            st = momentum_state(n, a)
            if not st.normalizable:
                print(f"  n={n}: not normalizable")
                continue
            rq, r = eigen_residual(st, a, grid)
            print(f"  n={n}: rayleigh {rq:.8f} residual {r:.3e}")
        print("  overlaps |<fact_n, fd_m>|:")
        print(overlaps(a, res, run.nmax))


if __name__ == "__main__":
    main(EigenRun())

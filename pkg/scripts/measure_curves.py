"""Information measures versus alpha for n = 0..3 in both representations.

Emits plot-ready (alpha, value) series for F, S, D, C and P.
Usage: python scripts/measure_curves.py [out_dir]
"""
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from fracqho import emit
from fracqho.sweep import RECORD_COLUMNS, SweepConfig, run_sweep, series

SERIES_COLUMNS = ("measure", "n", "representation", "normalization", "alpha", "value", "status")


@dataclass
class CurveRun:
    out: Path = Path("results/curves")
    n: tuple = (0, 1, 2, 3)
    alpha: tuple = field(default_factory=lambda: tuple(np.round(np.arange(1.05, 2.0001, 0.05), 2)))
    workers: int = 1


def main(run: CurveRun) -> None:
    cfg = SweepConfig(n=run.n, alpha=run.alpha, workers=run.workers, out=run.out)
    records = run_sweep(cfg)
    emit.emit_csv(run.out / "measures.csv", records, RECORD_COLUMNS)
    emit.emit_csv(run.out / "series.csv", series(records), SERIES_COLUMNS)
    for rep in ("position", "momentum"):
        print(f"-- {rep}: F, S, C per alpha")
        for rec in records:
            if rec["representation"] == rep and rec["status"] in ("ok", "divergent"):
                print(f"n={rec['n']} alpha={rec['alpha']:.2f} F={rec['F']:.6g} "
                      f"S={rec['S']:.6g} C={rec['C']:.6g}")


if __name__ == "__main__":
    main(CurveRun(out=Path(sys.argv[1])) if len(sys.argv) > 1 else CurveRun())

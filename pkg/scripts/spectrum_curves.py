"""Energy levels versus alpha and the Bohr-Sommerfeld round trip.

Usage: python scripts/spectrum_curves.py [out_dir]
"""
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from fracqho import emit
from fracqho.spectrum import Units
from fracqho.sweep import SPECTRUM_COLUMNS, SweepConfig, spectrum_records


@dataclass
class SpectrumRun:
    out: Path = Path("results/spectrum")
    n: tuple = tuple(range(6))
    alpha: tuple = field(default_factory=lambda: tuple(np.round(np.arange(1.0, 2.0001, 0.05), 2)))
    units: Units = field(default_factory=Units)


def main(run: SpectrumRun) -> None:
    rows = spectrum_records(SweepConfig(n=run.n, alpha=run.alpha))
    emit.emit_csv(run.out / "spectrum.csv", rows, SPECTRUM_COLUMNS)
    worst = max(r["action_rel_error"] for r in rows)
    print(f"{len(rows)} levels, worst action round-trip error {worst:.2e}")
    for r in rows:
        if r["alpha"] in (1.0, 1.5, 2.0):
            print(f"n={r['n']} alpha={r['alpha']:.2f} E={r['energy']:.10f}")


if __name__ == "__main__":
    main(SpectrumRun(out=Path(sys.argv[1])) if len(sys.argv) > 1 else SpectrumRun())

"""Reconcile computed LMC complexity and Fisher-Shannon values with the reference table.

Writes the full residual matrix and a per-n convention summary, then prints
the summary.  Usage: python scripts/reproduce_table.py [out_dir] [epsilon]
"""
import sys
from dataclasses import dataclass
from pathlib import Path

from fracqho import emit
from fracqho.sweep import RECONCILE_COLUMNS, SUMMARY_COLUMNS, SweepConfig, reconcile_table


@dataclass
class TableRun:
    out: Path = Path("results/table")
    epsilon: float | None = None
    workers: int = 1


def main(run: TableRun) -> None:
    cfg = SweepConfig(n=(0, 1, 2, 3), epsilon=run.epsilon, workers=run.workers, out=run.out)
    report = reconcile_table(cfg)
    emit.emit_csv(run.out / "reconcile.csv", report.cells, RECONCILE_COLUMNS)
    emit.emit_csv(run.out / "reconcile_summary.csv", report.summary, SUMMARY_COLUMNS)
    print(f"{'n':>2} {'representation':>14} {'normalization':>13} {'finite':>6} "
          f"{'rms log':>9} {'C decreasing':>12}")
    for row in report.summary:
        mark = "*" if row["best"] else " "
        print(f"{row['n']:>2} {row['representation']:>14} {row['normalization']:>13} "
              f"{row['finite_cells']:>6} {row['rms_log_residual']:>9.3f} "
              f"{bool(row['C_strictly_decreasing'])!s:>12} {mark}")
    low = sorted({(r["n"], r["alpha"]) for r in report.cells if r["target_below_lmc_bound"]})
    print(f"{len(low)} target cells have C < 1 (below the LMC bound)")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(TableRun(out=Path(args[0]) if args else TableRun.out,
                  epsilon=float(args[1]) if len(args) > 1 else None))

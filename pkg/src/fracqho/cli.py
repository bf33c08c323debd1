"""Command-line driver: ``fracqho {spectrum,states,measures,reconcile}``.

Exit codes: 0 success, 1 configuration error, 2 numerical failure on every
point, 3 partial failure (some points flagged).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import emit
from .sweep import (RECONCILE_COLUMNS, RECORD_COLUMNS, SAMPLE_COLUMNS, SPECTRUM_COLUMNS,
                    STATE_COLUMNS, SUMMARY_COLUMNS, ConfigError, SweepConfig, config_dict,
                    reconcile_table, run_sweep, sample_records, series, spectrum_records,
                    state_records)

log = logging.getLogger("fracqho")

EXIT_OK, EXIT_CONFIG, EXIT_FAILED, EXIT_PARTIAL = 0, 1, 2, 3
KEYS = ("n", "alpha", "representation", "normalize", "epsilon", "out", "format",
        "grid-points", "kmax", "tol", "workers")
DEFAULTS = {"n": "0:2", "alpha": "1.2:2.0:0.2", "representation": "x,k", "normalize": "on",
            "epsilon": None, "out": "out", "format": "csv", "grid-points": "65536",
            "kmax": None, "tol": "1e-10", "workers": "1"}
SERIES_COLUMNS = ("measure", "n", "representation", "normalization", "alpha", "value", "status")


def parse_values(text: str, kind=float, default_step: float = 0.1) -> tuple:
    """``"1,2,5"`` or ranges ``"a:b:step"`` (inclusive); items may be mixed."""
    out = []
    for item in filter(None, (s.strip() for s in str(text).split(","))):
        parts = item.split(":")
        try:
            if len(parts) == 1:
                out.append(kind(parts[0]))
                continue
            if len(parts) not in (2, 3):
                raise ValueError(item)
            a, b = float(parts[0]), float(parts[1])
            step = float(parts[2]) if len(parts) == 3 else (1.0 if kind is int else default_step)
        except ValueError as exc:
            raise ConfigError(f"cannot parse {item!r}") from exc
        if not step > 0 or b < a:
            raise ConfigError(f"bad range {item!r}")
        i = 0
        while a + i * step <= b + 1e-9 * step:
            v = round(a + i * step, 12)
            out.append(kind(v) if kind is int else v)
            i += 1
    if kind is int and any(int(v) != v for v in out):
        raise ConfigError(f"quantum numbers must be integers: {text!r}")
    return tuple(dict.fromkeys(out))


def read_config(path: Path) -> dict:
    """Flat ``key = value`` text; ``#`` starts a comment."""
    values = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for no, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{no}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("_", "-")
        if key not in KEYS:
            raise ConfigError(f"{path}:{no}: unknown key {key!r}")
        values[key] = val
    return values


def build_config(args: argparse.Namespace) -> SweepConfig:
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(read_config(args.config))
    for key in KEYS:
        v = getattr(args, key.replace("-", "_"))
        if v is not None:
            merged[key] = v
    try:
        rep = tuple(r.strip() for r in merged["representation"].split(",") if r.strip())
        norm = merged["normalize"].lower()
        if norm not in ("on", "off"):
            raise ConfigError("normalize must be on or off")
        return SweepConfig(
            n=parse_values(merged["n"], int),
            alpha=parse_values(merged["alpha"], float),
            representation=rep,
            normalize=norm == "on",
            epsilon=None if merged["epsilon"] in (None, "", "none") else float(merged["epsilon"]),
            out=Path(merged["out"]),
            format=merged["format"],
            grid_points=int(merged["grid-points"]),
            kmax=None if merged["kmax"] in (None, "", "none") else float(merged["kmax"]),
            tol=float(merged["tol"]),
            workers=int(merged["workers"]),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def _write(cfg: SweepConfig, stem: str, rows: list[dict], columns, extra: dict | None = None):
    path = cfg.out / f"{stem}.{cfg.format}"
    if cfg.format == "csv":
        emit.emit_csv(path, rows, columns)
    else:
        payload = {"columns": list(columns), "records": emit.table(rows, columns)}
        payload.update(extra or {})
        emit.emit_json(path, payload)
    log.info("wrote %s", path)
    return path


def _diagnostics(rec: dict) -> dict:
    return {"parseval_ratio": rec["parseval_ratio"], "rayleigh": rec["rayleigh"],
            "eigen_residual": rec["eigen_residual"], "flags": rec["flags"],
            "grid": {"points": rec["grid_points"], "k_max": rec["k_max"],
                     "crossover": rec["crossover"]}}


def cmd_spectrum(cfg: SweepConfig) -> int:
    _write(cfg, "spectrum", spectrum_records(cfg), SPECTRUM_COLUMNS)
    return EXIT_OK


def cmd_states(cfg: SweepConfig) -> int:
    _write(cfg, "states", state_records(cfg), STATE_COLUMNS)
    _write(cfg, "samples", sample_records(cfg), SAMPLE_COLUMNS)
    return EXIT_OK


def cmd_measures(cfg: SweepConfig) -> int:
    records = run_sweep(cfg)
    ser = series(records)
    if cfg.format == "json":
        rows = [dict(emit.table([r], RECORD_COLUMNS)[0], diagnostics=_diagnostics(r)) for r in records]
        payload = {"config": config_dict(cfg), "columns": list(RECORD_COLUMNS), "records": rows,
                   "series": emit.table(ser, SERIES_COLUMNS)}
        emit.emit_json(cfg.out / "measures.json", payload)
    else:
        _write(cfg, "measures", records, RECORD_COLUMNS)
        _write(cfg, "series", ser, SERIES_COLUMNS)
    ok = sum(r["status"] == "ok" for r in records)
    if not records or ok == len(records):
        return EXIT_OK
    return EXIT_FAILED if ok == 0 else EXIT_PARTIAL


def cmd_reconcile(cfg: SweepConfig) -> int:
    report = reconcile_table(cfg)
    _write(cfg, "reconcile", report.cells, RECONCILE_COLUMNS)
    _write(cfg, "reconcile_summary", report.summary, SUMMARY_COLUMNS)
    return EXIT_OK


COMMANDS = {"spectrum": cmd_spectrum, "states": cmd_states,
            "measures": cmd_measures, "reconcile": cmd_reconcile}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracqho", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", help="quantum numbers: list or range a:b[:step]")
        p.add_argument("--alpha", help="Levy indices in [1, 2]: list or range a:b:step")
        p.add_argument("--representation", help="x, k or x,k")
        p.add_argument("--normalize", choices=("on", "off"))
        p.add_argument("--epsilon", help="origin cutoff for non-normalizable states")
        p.add_argument("--out", help="output directory")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--grid-points", dest="grid_points")
        p.add_argument("--kmax")
        p.add_argument("--tol")
        p.add_argument("--workers")
        p.add_argument("--config", type=Path, help="flat key = value file; flags override it")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return COMMANDS[args.command](cfg)


if __name__ == "__main__":
    sys.exit(main())

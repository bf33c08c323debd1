"""Parameter sweeps over ``(n, alpha, representation)`` and target reconciliation."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import reference
from .genpoly import DomainError, momentum_state
from .measures import (MEASURES, MomentumProfile, SampledDensity, compose_measures,
                       normalize, position_density)
from .quad import DEFAULT_TOL, QuadratureError
from .refsolver import eigen_residual
from .spectrum import action_integral, energy_level
from .transform import (CROSSOVER, DEFAULT_POINTS, GridSpec, NonNormalizableState,
                        envelope_kmax, inverse_fourier, parseval_ratio)

REPRESENTATIONS = {"x": "position", "k": "momentum"}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    n: tuple[int, ...] = (0, 1, 2)
    alpha: tuple[float, ...] = (1.2, 1.4, 1.6, 1.8, 2.0)
    representation: tuple[str, ...] = ("x", "k")
    normalize: bool = True
    epsilon: float | None = None
    out: Path = Path("out")
    format: str = "csv"
    grid_points: int = DEFAULT_POINTS
    kmax: float | None = None
    tol: float = DEFAULT_TOL
    workers: int = 1

    def __post_init__(self):
        if any(int(n) != n or n < 0 for n in self.n):
            raise ConfigError(f"quantum numbers must be non-negative integers: {self.n}")
        if any(not 1.0 <= a <= 2.0 for a in self.alpha):
            raise ConfigError(f"alpha values must lie in [1, 2]: {self.alpha}")
        if any(r not in REPRESENTATIONS for r in self.representation):
            raise ConfigError(f"representation must be x or k: {self.representation}")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ConfigError("epsilon must be positive")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        p = self.grid_points
        if p < 2**10 or p & (p - 1):
            raise ConfigError("grid-points must be a power of two >= 1024")
        if self.kmax is not None and not self.kmax > 0:
            raise ConfigError("kmax must be positive")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def points(self) -> list[tuple[int, float, str]]:
        """Sweep points in the canonical ``(n, alpha, representation)`` order."""
        return sorted({(int(n), float(a), REPRESENTATIONS[r])
                       for n in self.n for a in self.alpha for r in self.representation})


RECORD_COLUMNS = (
    "n", "alpha", "representation", "normalization", "status", "energy",
    *MEASURES,
    "norm_constant", "epsilon", "grid_points", "k_max", "crossover",
    "parseval_ratio", "rayleigh", "eigen_residual", "flags", "message",
)


def _blank(n: int, alpha: float, rep: str, normalized: bool, cfg: SweepConfig) -> dict:
    rec = {c: math.nan for c in RECORD_COLUMNS}
    rec.update(n=n, alpha=alpha, representation=rep,
               normalization="normalized" if normalized else "raw",
               status="ok", flags="", message="", epsilon=math.nan,
               grid_points=cfg.grid_points, crossover=math.nan)
    return rec


def _flags(divergences: dict[str, float]) -> str:
    return ";".join(f"{k}:{v:.17g}" for k, v in sorted(divergences.items()))


def _density(state, rep: str, cfg: SweepConfig, rec: dict) -> SampledDensity:
    if rep == "momentum":
        cut = cfg.kmax if cfg.kmax is not None else envelope_kmax(state, 1e-20)
        rec["k_max"] = cut
        return SampledDensity.from_profile("momentum", MomentumProfile(state, cut),
                                           source=(state.n, state.alpha), tol=cfg.tol)
    grid = GridSpec.for_state(state, cfg.grid_points, cfg.kmax)
    rec.update(k_max=grid.k_max, crossover=CROSSOVER)
    rec["parseval_ratio"] = parseval_ratio(inverse_fourier(state, grid), state)
    return position_density(state, grid, tol=cfg.tol)


def compute_record(n: int, alpha: float, rep: str, normalized: bool, cfg: SweepConfig) -> dict:
    """One output record; failures are recorded in ``status``/``message``."""
    rec = _blank(n, alpha, rep, normalized, cfg)
    try:
        rec["energy"] = energy_level(n, alpha)
        state = momentum_state(n, alpha, strict=False)
        if not state.normalizable:
            if cfg.epsilon is None:
                raise NonNormalizableState(n, alpha, state.min_exponent())
            state = state.regularized(cfg.epsilon)
            rec["epsilon"] = cfg.epsilon
            rec["flags"] = f"regularized:{cfg.epsilon:.17g}"
            if rep == "position":
                rec["status"] = "unsupported"
                rec["message"] = "position transform of a regularized state is not evaluated"
                return rec
        else:
            rec["rayleigh"], rec["eigen_residual"] = eigen_residual(state)
        density = _density(state, rep, cfg, rec)
        if normalized:
            density = normalize(density)
        rec["norm_constant"] = density.normalization
        m = compose_measures(density)
        rec.update(m.as_dict())
        if m.divergences:
            rec["status"] = "divergent"
            rec["flags"] = ";".join(f for f in (rec["flags"], _flags(m.divergences)) if f)
    except NonNormalizableState as exc:
        rec.update(status="non_normalizable", message=str(exc), flags=f"density_exponent:{exc.exponent:.17g}")
    except (QuadratureError, DomainError, FloatingPointError) as exc:
        rec.update(status="numerical_failure", message=str(exc))
    return rec


def _task(args):
    return compute_record(*args)


def _map(tasks: list, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_task, tasks))   # map preserves submission order


def run_sweep(cfg: SweepConfig) -> list[dict]:
    """Records for every sweep point in canonical order."""
    tasks = [(n, a, rep, cfg.normalize, cfg) for n, a, rep in cfg.points()]
    return _map(tasks, cfg.workers)


def series(records: list[dict]) -> list[dict]:
    """Plot-ready ``(alpha, value)`` rows per measure, curve and point."""
    rows = []
    for m in MEASURES:
        for rec in records:
            rows.append({"measure": m, "n": rec["n"], "representation": rec["representation"],
                         "normalization": rec["normalization"], "alpha": rec["alpha"],
                         "value": rec[m], "status": rec["status"]})
    rows.sort(key=lambda r: (r["measure"], r["n"], r["representation"], r["normalization"], r["alpha"]))
    return rows


SPECTRUM_COLUMNS = ("n", "alpha", "energy", "action", "action_target", "action_rel_error")


def spectrum_records(cfg: SweepConfig) -> list[dict]:
    rows = []
    for n in sorted(set(cfg.n)):
        for a in sorted(set(cfg.alpha)):
            e = energy_level(n, a)
            s = action_integral(e, a)
            target = 2 * math.pi * (n + 0.5)
            rows.append(dict(n=n, alpha=a, energy=e, action=s, action_target=target,
                             action_rel_error=abs(s - target) / target))
    return rows


STATE_COLUMNS = ("n", "alpha", "parity", "term", "coefficient", "exponent",
                 "min_exponent", "normalizable")
SAMPLE_COLUMNS = ("n", "alpha", "representation", "coordinate", "re", "im", "density")


def state_records(cfg: SweepConfig) -> list[dict]:
    rows = []
    for n in sorted(set(cfg.n)):
        for a in sorted(set(cfg.alpha)):
            st = momentum_state(n, a, strict=False)
            for i, (c, e) in enumerate(zip(st.poly.coefficients, st.poly.exponents)):
                rows.append(dict(n=n, alpha=a, parity=st.parity, term=i, coefficient=float(c),
                                 exponent=float(e), min_exponent=st.min_exponent(),
                                 normalizable=int(st.normalizable)))
    return rows


def sample_records(cfg: SweepConfig, extent: float = 10.0, count: int = 401) -> list[dict]:
    """Wavefunction samples on a uniform grid for plotting (normalizable states only)."""
    rows = []
    coords = np.linspace(-extent, extent, count)
    for n, a, rep in cfg.points():
        st = momentum_state(n, a, strict=False)
        if not st.normalizable:
            continue
        if rep == "momentum":
            vals = np.array([st(k) if k != 0 or st.min_exponent() >= 0 else complex("nan")
                             for k in coords])
        else:
            from .transform import PositionEvaluator
            ev = PositionEvaluator(st, GridSpec.for_state(st, cfg.grid_points, cfg.kmax))
            vals = ev.psi(coords)
        for c, v in zip(coords, vals):
            rows.append(dict(n=n, alpha=a, representation=rep, coordinate=float(c),
                             re=float(v.real), im=float(v.imag), density=float(abs(v) ** 2)))
    return rows


# -- reconciliation -----------------------------------------------------------

CONVENTIONS = tuple((rep, norm) for norm in ("normalized", "raw") for rep in ("position", "momentum"))

RECONCILE_COLUMNS = ("n", "alpha", "representation", "normalization", "status", "C", "P",
                     "target_C", "target_P", "residual_C", "residual_P",
                     "rel_residual_C", "rel_residual_P", "target_below_lmc_bound")
SUMMARY_COLUMNS = ("n", "representation", "normalization", "cells", "finite_cells",
                   "rms_log_residual", "rms_rel_residual", "best", "C_strictly_decreasing")


@dataclass(frozen=True)
class ReconciliationReport:
    cells: list[dict]
    summary: list[dict]
    best: dict[int, tuple[str, str]] = field(default_factory=dict)

    def best_decreasing(self, n: int = 0) -> bool:
        for row in self.summary:
            if row["n"] == n and row["best"]:
                return bool(row["C_strictly_decreasing"])
        return False


def reconcile_table(cfg: SweepConfig) -> ReconciliationReport:
    """Compare computed ``(C, P)`` with the reference targets under four conventions."""
    cells = reference.cells(cfg.n)
    tasks = [(n, a, rep, norm == "normalized", cfg)
             for n, a in cells for rep, norm in CONVENTIONS]
    recs = _map(tasks, cfg.workers)
    rows = []
    for rec in recs:
        tc, tp = reference.TARGETS[(rec["n"], rec["alpha"])]
        C, P = rec["C"], rec["P"]
        rows.append(dict(n=rec["n"], alpha=rec["alpha"], representation=rec["representation"],
                         normalization=rec["normalization"], status=rec["status"], C=C, P=P,
                         target_C=tc, target_P=tp, residual_C=C - tc, residual_P=P - tp,
                         rel_residual_C=(C - tc) / tc, rel_residual_P=(P - tp) / tp,
                         target_below_lmc_bound=int(tc < 1.0)))
    rows.sort(key=lambda r: (r["n"], r["alpha"], r["representation"], r["normalization"]))
    summary, best = [], {}
    for n in sorted({r["n"] for r in rows}):
        group = []
        for rep, norm in CONVENTIONS:
            sel = [r for r in rows if r["n"] == n and r["representation"] == rep
                   and r["normalization"] == norm]
            fin = [r for r in sel if math.isfinite(r["C"]) and math.isfinite(r["P"])]
            rms = (math.sqrt(sum(r["rel_residual_C"] ** 2 + r["rel_residual_P"] ** 2 for r in fin)
                             / (2 * len(fin))) if fin else math.inf)
            logs = [math.log(r[q] / r["target_" + q]) for r in fin for q in ("C", "P")
                    if r[q] > 0]
            rms_log = math.sqrt(sum(v * v for v in logs) / len(logs)) if logs else math.inf
            cs = [r["C"] for r in sorted(sel, key=lambda r: r["alpha"])]
            dec = all(math.isfinite(c) for c in cs) and all(b < a for a, b in zip(cs, cs[1:]))
            group.append(dict(n=n, representation=rep, normalization=norm, cells=len(sel),
                              finite_cells=len(fin), rms_log_residual=rms_log,
                              rms_rel_residual=rms, best=0,
                              C_strictly_decreasing=int(dec)))
        # most finite cells first, then the smallest log-ratio residual: the
        # targets span five decades and relative residuals of underestimates
        # saturate at 1, which would favour conventions that are uniformly too small
        winner = min(group, key=lambda g: (-g["finite_cells"], g["rms_log_residual"]))
        winner["best"] = 1
        best[n] = (winner["representation"], winner["normalization"])
        summary.extend(group)
    return ReconciliationReport(rows, summary, best)


def config_dict(cfg: SweepConfig) -> dict:
    d = asdict(cfg)
    d["out"] = str(cfg.out)
    return d

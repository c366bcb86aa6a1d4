"""On-disk artifacts: diagnostics traces (CSV) and field snapshots (text).

Everything is written with repr-faithful %.17g formatting so a written file
reproduces the in-memory doubles bit for bit when read back.  The output root
comes from SKYRMELAB_OUT when set, else the working directory; run_scenario
nests per-run directories under it.
"""
import math
import os
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import initial_state
from .errors import ConfigError
from .grid import RadialGrid, radial_integral
from .models import Kind, ModelSpec
from .solver import FieldState, detect_blowup, integrate

TRACE_COLUMNS = ("t", "total_energy", "sup_abs_u", "sup_abs_u_r",
                 "lightcone_energy", "deficit", "blowup_flag")
_FMT = "%.17g"


def output_root():
    return Path(os.environ.get("SKYRMELAB_OUT") or os.getcwd())


def _fmt(x):
    return _FMT % x


def write_trace(path, trace):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(TRACE_COLUMNS)]
    for row in trace.rows:
        cells = [_fmt(getattr(row, c)) for c in TRACE_COLUMNS[:-1]]
        cells.append(str(row.blowup_flag))
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")
    return path


def read_trace(path):
    """Columns as a dict of arrays; validates the header."""
    lines = Path(path).read_text().splitlines()
    if not lines or tuple(lines[0].split(",")) != TRACE_COLUMNS:
        raise ConfigError(f"{path}: not a trace file (bad header)")
    table = np.array([[float(c) for c in ln.split(",")] for ln in lines[1:]], dtype=float)
    if table.ndim != 2 or table.shape[1] != len(TRACE_COLUMNS):
        raise ConfigError(f"{path}: malformed trace rows")
    return {name: table[:, j] for j, name in enumerate(TRACE_COLUMNS)}


def write_snapshot(path, state):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    g = state.grid
    model = state.model
    alpha = "" if model.alpha is None else f" alpha={_fmt(model.alpha)}"
    lines = [
        f"# t={_fmt(state.t)}",
        f"# model={model.kind.value}{alpha}",
        f"# N={g.N}  R={_fmt(g.R)}",
    ]
    for r, v, vt in zip(g.nodes, state.v, state.vt):
        lines.append(f"{_fmt(r)} {_fmt(v)} {_fmt(vt)}")
    path.write_text("\n".join(lines) + "\n")
    return path


def read_snapshot(path):
    """Inverse of write_snapshot; OSError propagates, bad content is ConfigError."""
    path = Path(path)
    lines = path.read_text().splitlines()
    meta = {}
    body = []
    for ln in lines:
        ln = ln.strip()
        if not ln:
            continue
        if ln.startswith("#"):
            for tok in ln[1:].split():
                if "=" in tok:
                    k, _, val = tok.partition("=")
                    meta[k] = val
        else:
            body.append(ln)
    for key in ("t", "model", "N", "R"):
        if key not in meta:
            raise ConfigError(f"{path}: snapshot header lacks {key}=")
    N, R = int(meta["N"]), float(meta["R"])
    if len(body) != N + 1:
        raise ConfigError(f"{path}: expected {N + 1} rows, found {len(body)}")
    table = np.array([[float(c) for c in ln.split()] for ln in body], dtype=float)
    if table.shape[1] != 3:
        raise ConfigError(f"{path}: snapshot rows must be 'r v vt'")
    grid = RadialGrid(R, N)
    if not np.allclose(table[:, 0], grid.nodes, rtol=0.0, atol=1e-12 * R):
        raise ConfigError(f"{path}: radius column does not match a uniform grid on (0, {R}]")
    alpha = float(meta["alpha"]) if "alpha" in meta else None
    model = ModelSpec(Kind(meta["model"]), alpha=alpha)
    return FieldState(float(meta["t"]), table[:, 1].copy(), table[:, 2].copy(), grid, model)


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: str

    def line(self):
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict}  {self.name}: measured {self.value:.6g}  (required {self.tolerance})"


@dataclass
class ScenarioReport:
    scenario: str
    checks: list
    runtime_s: float
    outdir: Path = None
    trace_path: Path = None
    snapshot_path: Path = None
    blew_up: bool = False
    blowup: object = None
    final_sup_u: float = math.nan
    final_energy: float = math.nan
    energy_drift: float = math.nan
    final_deficit: float = math.nan
    error_vs_exact: float = math.nan

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def table(self):
        return "\n".join(c.line() for c in self.checks)


def _error_vs_exact(cfg, state):
    """L2(r^4 dr) distance to the exact free-wave solution; nan if unavailable."""
    if cfg.model != "free-wave-5d" or cfg.data.family != "free-wave":
        return math.nan
    from .exact import GaussianProfile, exact_free_wave_5d

    prof = GaussianProfile(amplitude=cfg.data.amplitude, width=cfg.data.width,
                           center=cfg.data.center)
    exact = np.asarray(exact_free_wave_5d(prof, state.t, state.grid.nodes))
    diff = state.v - exact
    return float(np.sqrt(radial_integral(diff * diff, state.grid, weight_power=4,
                                         warn_tail=False)))


def _evaluate_checks(cfg, trace, verdict):
    sup = trace.column("sup_abs_u")
    energy = trace.column("total_energy")
    finite = energy[np.isfinite(energy)]
    drift = math.nan
    if len(finite) >= 2 and abs(finite[0]) > 0:
        drift = float(np.max(np.abs(finite - finite[0])) / abs(finite[0]))
    checks = []
    expected = dict(cfg.expect.items())
    if not expected:
        checks.append(CheckResult("completed", not trace.blew_up,
                                  float(sup[-1]) if len(sup) else math.nan,
                                  "finite run to T"))
    if "energy_drift_max" in expected:
        bound = expected["energy_drift_max"]
        checks.append(CheckResult("energy_drift", drift <= bound, drift, f"<= {bound:g}"))
    if "blowup" in expected:
        want = expected["blowup"]
        checks.append(CheckResult("blowup", verdict.detected == want,
                                  float(verdict.detected), f"detector == {want}"))
    if "growth_min" in expected:
        bound = expected["growth_min"]
        checks.append(CheckResult("growth_min", verdict.growth_factor >= bound,
                                  verdict.growth_factor, f">= {bound:g}"))
    if "growth_max" in expected:
        bound = expected["growth_max"]
        checks.append(CheckResult("growth_max", verdict.growth_factor <= bound,
                                  verdict.growth_factor, f"<= {bound:g}"))
    if "profile_fit_max" in expected:
        bound = expected["profile_fit_max"]
        value = verdict.profile_fit_error
        checks.append(CheckResult("profile_fit", math.isfinite(value) and value <= bound,
                                  value, f"<= {bound:g}"))
    if "sup_u_max" in expected:
        bound = expected["sup_u_max"]
        value = float(np.nanmax(sup)) if len(sup) else math.nan
        checks.append(CheckResult("sup_u", value <= bound, value, f"<= {bound:g}"))
    if "t_star" in expected:
        target, tol = expected["t_star"], cfg.expect.t_star_tol
        value = verdict.t_star_estimate
        checks.append(CheckResult("t_star", math.isfinite(value) and abs(value - target) <= tol,
                                  value, f"within {tol:g} of {target:g}"))
    return checks, drift


def run_scenario(cfg, outdir=None):
    """Integrate cfg and persist trace.csv plus the final snapshot.

    T=0 still produces one trace row and one snapshot (the initial data),
    so a scenario file is inspectable without committing to a full run.
    Checks from the config's [expect] section become the report's criteria.
    """
    started = time.perf_counter()
    state = initial_state(cfg)
    trace = integrate(
        state, cfg.dt_effective, cfg.T,
        cadence=cfg.cadence,
        lightcone_t0=cfg.lightcone_t0,
        track_deficit=cfg.track_deficit,
        boundary=cfg.boundary,
        sup_window=cfg.sup_window,
        growth_threshold=cfg.growth_threshold,
    )
    if outdir is None:
        outdir = output_root() / (cfg.outdir or cfg.name)
    outdir = Path(outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        trace_path = write_trace(outdir / "trace.csv", trace)
        snapshot_path = write_snapshot(outdir / "final.snap", trace.final_state)
        (outdir / "config.echo").write_text(cfg.echo())
    except OSError as e:
        raise IOError(f"cannot write run artifacts under {outdir}: {e}") from e
    verdict = detect_blowup(trace, trace.final_state)
    checks, drift = _evaluate_checks(cfg, trace, verdict)
    sup = trace.column("sup_abs_u")
    energy = trace.column("total_energy")
    deficit = trace.column("deficit")
    return ScenarioReport(
        scenario=cfg.name,
        checks=checks,
        runtime_s=time.perf_counter() - started,
        outdir=outdir,
        trace_path=trace_path,
        snapshot_path=snapshot_path,
        blew_up=trace.blew_up,
        blowup=verdict,
        final_sup_u=float(sup[-1]) if len(sup) else math.nan,
        final_energy=float(energy[-1]) if len(energy) else math.nan,
        energy_drift=drift,
        final_deficit=float(deficit[-1]) if len(deficit) else math.nan,
        error_vs_exact=_error_vs_exact(cfg, trace.final_state),
    )

"""Acceptance checklist: every release-gating property as a callable check.

Each numbered criterion function reruns its scenario from scratch and returns
a ScenarioReport whose checks carry the measured value next to the required
bound; nothing is cached between runs.  Suites group the criteria by the
module they exercise, `all` runs each exactly once.  The CLI's `verify`
subcommand is a thin wrapper over run_suite.
"""
import math
import time
import warnings
from dataclasses import replace

import numpy as np

from .config import parse_config
from .coefficients import check_coeff_bounds, check_sin_inequality, tilde_h
from .errors import ConfigError
from .exact import GaussianProfile, exact_free_wave_5d, turok_spergel
from .grid import FieldSamples, Parity, RadialGrid, d_r, laplacian5, radial_integral
from .models import Kind, ModelSpec, rhs_u
from .runio import CheckResult, ScenarioReport, output_root, run_scenario
from .scenarios import data_size, load_scenario, smallness_gate
from .solver import FieldState, convergence_study, integrate, scattering_deficit
from .spectral import (SPHERE_AREA, DyadicCutoff, RadialProfile, SpectralProfile,
                       besov_norm, dyadic_band, dyadic_piece, inverse_radial_fourier,
                       radial_dyadic_sobolev_check, radial_fourier, scale,
                       sobolev_norm)

try:
    from scipy.special import gamma as _gamma
except ImportError:  # pragma: no cover
    _gamma = math.gamma


def _report(name, checks, started):
    return ScenarioReport(scenario=name, checks=checks,
                          runtime_s=time.perf_counter() - started)


def _artifact_dir(name):
    return output_root() / "verify-artifacts" / name


# ---------------------------------------------------------------- criterion 1

def shrinker_exactness():
    """The closed-form self-similar collapse solves the wave-map equation."""
    started = time.perf_counter()
    rng = np.random.default_rng(20260819)
    t = rng.uniform(0.1, 10.0, 10_000)
    r = rng.uniform(1e-2, 30.0, 10_000)
    u, u_t, u_r, u_tt, u_rr = turok_spergel(t, r)
    res = u_tt - rhs_u(ModelSpec(Kind.WAVE_MAP), r, u, u_r, u_t, u_rr)
    worst = float(np.max(np.abs(res)))
    checks = [CheckResult("collapse_solution_residual", worst <= 1e-12, worst, "<= 1e-12")]
    return _report("shrinker-exactness", checks, started)


# ---------------------------------------------------------------- criterion 2

def coefficient_limits():
    """Axis limits of the six stripped nonlinearity coefficients."""
    started = time.perf_counter()
    checks = []
    for alpha in (1.0, 0.7):
        limits = {1: -4.0 / 3.0, 2: -2.0 * alpha**2 / 3.0, 3: 0.0,
                  4: 2.0 * alpha**2, 5: -4.0 / 3.0, 6: 4.0 / 3.0}
        worst = max(abs(tilde_h(cid, 0.0, alpha=alpha) - lim)
                    for cid, lim in limits.items())
        checks.append(CheckResult(f"axis_limits_alpha_{alpha:g}", worst <= 1e-10,
                                  worst, "<= 1e-10"))
    return _report("coefficient-limits", checks, started)


# ---------------------------------------------------------------- criterion 3

def coefficient_bounds_suite():
    """Parity, signs, weighted boundedness, and the sine-ratio bounds."""
    started = time.perf_counter()
    checks = []
    u = np.concatenate([np.linspace(1e-8, 60.0, 20_001),
                        np.geomspace(1e-12, 1e-2, 500)])
    parity_defect = 0.0
    for cid in range(1, 7):
        sign = -1.0 if cid == 3 else 1.0
        a = tilde_h(cid, u, alpha=1.0)
        b = tilde_h(cid, -u, alpha=1.0)
        parity_defect = max(parity_defect,
                            float(np.max(np.abs(a - sign * b) / (1.0 + np.abs(a)))))
    checks.append(CheckResult("parity", parity_defect <= 1e-12, parity_defect, "<= 1e-12"))

    sign_worst = max(float(np.max(tilde_h(1, u))), float(np.max(tilde_h(5, u))),
                     float(np.max(-tilde_h(6, u))))
    checks.append(CheckResult("signs_h1_h5_h6", sign_worst <= 1e-15, sign_worst, "<= 1e-15"))

    bound_worst = 0.0
    signs_ok = True
    for cid in range(1, 7):
        rep = check_coeff_bounds(cid, alpha=1.0)
        bound_worst = max(bound_worst, max(rep.weighted_sup.values()))
        if rep.sign_ok is False:
            signs_ok = False
    checks.append(CheckResult("weighted_suprema_finite",
                              signs_ok and math.isfinite(bound_worst),
                              bound_worst, "finite, signs hold"))

    rep = check_sin_inequality(1.0)
    for j, bound in ((0, 1.0), (1, rep.analytic_bound[1]), (2, 0.5)):
        value = rep.sampled_sup[j]
        checks.append(CheckResult(f"sine_ratio_j{j}", value <= bound * (1 + 1e-12),
                                  value, f"<= {bound:g}"))
    return _report("coefficient-bounds", checks, started)


# ---------------------------------------------------------------- criterion 4

def solver_convergence():
    """4th-order convergence against the closed-form linear solution."""
    started = time.perf_counter()
    cfg = load_scenario("free-wave-convergence")
    prof = GaussianProfile(amplitude=cfg.data.amplitude, width=cfg.data.width,
                           center=cfg.data.center)

    def data_fn(g):
        return (exact_free_wave_5d(prof, 0.0, g.nodes),
                exact_free_wave_5d(prof, 0.0, g.nodes, t_order=1))

    def exact_fn(g, t):
        return exact_free_wave_5d(prof, t, g.nodes)

    rep = convergence_study(data_fn, ModelSpec(Kind.FREE_WAVE_5D),
                            (512, 1024, 2048), R=cfg.R, T=cfg.T, cfl=cfg.cfl,
                            exact=exact_fn)
    checks = [CheckResult("observed_order", rep.observed_order >= 3.5,
                          rep.observed_order, ">= 3.5")]
    return _report("solver-convergence", checks, started)


# ---------------------------------------------------------------- criterion 5

def energy_conservation():
    """Small-data Skyrme and Adkins-Nappi runs conserve energy to 1e-6."""
    started = time.perf_counter()
    checks = []
    for name in ("skyrme-small", "adkins-nappi-small"):
        cfg = load_scenario(name)
        rep = run_scenario(cfg, outdir=_artifact_dir(name))
        for c in rep.checks:
            checks.append(CheckResult(f"{name}/{c.name}", c.passed, c.value, c.tolerance))
    return _report("energy-conservation", checks, started)


# ---------------------------------------------------------------- criterion 6

def blowup_vs_regularization():
    """Identical large data: wave map collapses, Skyrme flow stays regular."""
    started = time.perf_counter()
    checks = []
    for name in ("wavemap-blowup", "skyrme-blowup-control"):
        cfg = load_scenario(name)
        rep = run_scenario(cfg, outdir=_artifact_dir(name))
        for c in rep.checks:
            checks.append(CheckResult(f"{name}/{c.name}", c.passed, c.value, c.tolerance))
    return _report("blowup-vs-regularization", checks, started)


# ---------------------------------------------------------------- criterion 7

def cubic_smallness_scaling():
    """Halving small data amplitudes cuts the nonlinear deficit ~8x."""
    started = time.perf_counter()
    R, N, T2 = 18.0, 2048, 10.0
    g = RadialGrid(R, N)
    dt = 0.5 * g.dr
    model = ModelSpec(Kind.ADKINS_NAPPI)
    deltas = (0.2, 0.1, 0.05)
    deficits = []
    for amp in deltas:
        v0 = amp * np.exp(-g.nodes**2)
        st = FieldState(0.0, v0, np.zeros_like(v0), g, model)
        deficits.append(scattering_deficit(st, dt, 0.0, T2).deficit)
    v0 = deltas[0] * np.exp(-g.nodes**2)
    st = FieldState(0.0, v0, np.zeros_like(v0), g, model)
    tr = integrate(st, dt, T2, cadence=50)
    run_sup = float(np.nanmax(tr.column("sup_abs_u")))
    checks = [CheckResult("largest_amplitude_sup_u", run_sup <= 0.1, run_sup, "<= 0.1")]
    for k in range(len(deltas) - 1):
        ratio = deficits[k] / deficits[k + 1]
        checks.append(CheckResult(f"deficit_ratio_{deltas[k]:g}_to_{deltas[k+1]:g}",
                                  6.0 <= ratio <= 10.0, ratio, "in [6, 10]"))
    return _report("cubic-smallness-scaling", checks, started)


# ---------------------------------------------------------------- criterion 8

def scattering_trend():
    """Deficit to the free flow shrinks as the handoff time grows."""
    started = time.perf_counter()
    R, N, T2 = 28.0, 2048, 20.0
    g = RadialGrid(R, N)
    dt = 0.5 * g.dr
    handoffs = (0.0, 2.5, 5.0, 7.5)
    checks = []
    for model in (ModelSpec(Kind.SKYRME, alpha=1.0), ModelSpec(Kind.ADKINS_NAPPI)):
        v0 = 0.2 * np.exp(-g.nodes**2)
        st = FieldState(0.0, v0, np.zeros_like(v0), g, model)
        deficits = [scattering_deficit(st, dt, T1, T2).deficit for T1 in handoffs]
        drops = np.diff(deficits)
        tag = model.kind.value
        checks.append(CheckResult(f"{tag}/deficit_5_below_0",
                                  deficits[2] < deficits[0],
                                  deficits[2] / deficits[0], "ratio < 1"))
        checks.append(CheckResult(f"{tag}/monotone_decrease",
                                  bool(np.all(drops < 0.0)),
                                  float(np.max(drops)), "all successive drops < 0"))
    return _report("scattering-trend", checks, started)


# ---------------------------------------------------------------- criterion 9

def spectral_oracles():
    """Closed-form Gaussian norms, Besov/Sobolev match, shell reconstruction."""
    started = time.perf_counter()
    checks = []

    g = RadialGrid(16.0, 1024)
    gauss = np.exp(-g.nodes**2 / 2.0)
    worst = 0.0
    for n in (3, 5):
        p = RadialProfile(gauss, g, dim=n)
        for s in (0.0, 1.0, 1.5, 2.0, 2.5):
            exact = SPHERE_AREA[n] * _gamma(s + n / 2.0) / 2.0
            got = sobolev_norm(p, s) ** 2
            worst = max(worst, abs(got - exact) / exact)
    checks.append(CheckResult("gaussian_norm_oracle", worst <= 1e-4, worst, "<= 1e-4 rel"))

    g2 = RadialGrid(128.0, 512)
    gauss2 = np.exp(-g2.nodes**2 / 2.0)
    worst = 0.0
    for n in (3, 5):
        p = RadialProfile(gauss2, g2, dim=n)
        for s in (0.0, 1.0, 1.5):
            sob = sobolev_norm(p, s)
            bes = float(besov_norm(p, s, 2, 2))
            worst = max(worst, abs(bes - sob) / sob)
    checks.append(CheckResult("besov_22_matches_sobolev", worst <= 1e-3, worst, "<= 1e-3 rel"))

    p = RadialProfile(gauss, g, dim=5)
    sp = radial_fourier(p)
    cutoff = DyadicCutoff()
    band = dyadic_band(g)
    window = np.zeros_like(sp.rho_nodes)
    for lam in band[1:-1]:
        window += cutoff.chi(sp.rho_nodes / lam)
    limited = inverse_radial_fourier(
        SpectralProfile(5, sp.rho_nodes, sp.fhat * window, g))
    with warnings.catch_warnings():
        # band-limiting leaves harmless ringing at the grid edge
        warnings.simplefilter("ignore", RuntimeWarning)
        sp_lim = radial_fourier(limited)
        recon = np.zeros_like(limited.values)
        for lam in band:
            recon += dyadic_piece(limited, lam, cutoff=cutoff, spectrum=sp_lim).values
    num = radial_integral((recon - limited.values) ** 2, g, 4, warn_tail=False)
    den = radial_integral(limited.values**2, g, 4, warn_tail=False)
    err = math.sqrt(num / den)
    checks.append(CheckResult("shell_reconstruction", err <= 1e-6, err, "<= 1e-6 rel"))
    return _report("spectral-oracles", checks, started)


# --------------------------------------------------------------- criterion 10

def scaling_invariance():
    """Critical-norm invariance of the dilation family u_lam = lam^a u(r/lam)."""
    started = time.perf_counter()
    g = RadialGrid(32.0, 2048)
    u = g.nodes**2 * np.exp(-g.nodes**2)
    p = RadialProfile(u, g, dim=3)
    checks = []
    for a, s in ((1.0, 2.5), (0.5, 2.0)):
        base = sobolev_norm(p, s)
        worst = 0.0
        for lam in (0.25, 0.5, 1.0, 2.0, 4.0):
            value = sobolev_norm(scale(p, lam, a), s)
            worst = max(worst, abs(value - base) / base)
        checks.append(CheckResult(f"dilation_a_{a:g}_s_{s:g}", worst <= 1e-3,
                                  worst, "<= 1e-3 rel"))
    return _report("scaling-invariance", checks, started)


# --------------------------------------------------------------- criterion 11

def supremum_vs_energy_trend():
    """Lower energy data never peak higher: rank correlation exactly 1."""
    started = time.perf_counter()
    g = RadialGrid(12.0, 2048)
    dt = 0.5 * g.dr
    model = ModelSpec(Kind.SKYRME, alpha=1.0)
    amplitudes = (0.8, 0.65, 0.5, 0.35, 0.2)
    energies, sups = [], []
    for amp in amplitudes:
        v0 = amp * np.exp(-g.nodes**2)
        st = FieldState(0.0, v0, np.zeros_like(v0), g, model)
        tr = integrate(st, dt, 5.0, cadence=25)
        energies.append(tr.column("total_energy")[0])
        sups.append(float(np.nanmax(tr.column("sup_abs_u"))))
    energies = np.array(energies)
    sups = np.array(sups)
    checks = [CheckResult("energies_strictly_decreasing",
                          bool(np.all(np.diff(energies) < 0)),
                          float(np.max(np.diff(energies))), "all drops < 0")]
    ranks_e = np.argsort(np.argsort(energies))
    ranks_s = np.argsort(np.argsort(sups))
    identical = bool(np.array_equal(ranks_e, ranks_s))
    checks.append(CheckResult("sup_ranks_follow_energy_ranks", identical,
                              1.0 if identical else 0.0, "rank correlation == 1"))
    checks.append(CheckResult("sup_strictly_decreasing",
                              bool(np.all(np.diff(sups) < 0)),
                              float(np.max(np.diff(sups))), "all drops < 0"))
    return _report("supremum-vs-energy", checks, started)


# --------------------------------------------------------------- criterion 12

def dyadic_sobolev_stability():
    """Sampled shell-sum constants stay within 2x across dilations."""
    started = time.perf_counter()
    checks = []
    for n, alpha, p_exp, q_exp in ((5, 4, 2, math.inf), (3, 2, 2, 4), (5, 0, 2, 4)):
        rep = radial_dyadic_sobolev_check(n, alpha, p_exp, q_exp)
        q_tag = "inf" if math.isinf(q_exp) else f"{q_exp:g}"
        checks.append(CheckResult(f"stability_n{n}_a{alpha}_p{p_exp}_q{q_tag}",
                                  rep.stability <= 2.0, rep.stability, "<= 2.0"))
    return _report("dyadic-sobolev-stability", checks, started)


# --------------------------------------------------------- structural suites

def grid_calculus_checks():
    """Stencils and quadrature are exact on low-degree polynomials."""
    started = time.perf_counter()
    g = RadialGrid(10.0, 128)
    r = g.nodes
    checks = []

    f = FieldSamples(r**2, Parity.EVEN)
    err = float(np.max(np.abs(d_r(f, g).values - 2.0 * r)))
    checks.append(CheckResult("derivative_exact_quadratic", err <= 1e-11, err, "<= 1e-11"))

    lap = laplacian5(f, g).values
    err = float(np.max(np.abs(lap - 10.0)))
    checks.append(CheckResult("laplacian_exact_quadratic", err <= 1e-10, err, "<= 1e-10"))

    got = radial_integral(r**3, g, weight_power=0, warn_tail=False)
    err = abs(got - 10.0**4 / 4.0) / (10.0**4 / 4.0)
    checks.append(CheckResult("simpson_exact_cubic", err <= 1e-14, err, "<= 1e-14 rel"))

    try:
        FieldSamples(np.ones_like(r), Parity.ODD)
        ok = False
    except ValueError:
        ok = True
    checks.append(CheckResult("odd_fields_vanish_at_axis", ok, float(ok), "contract enforced"))
    return _report("grid-calculus", checks, started)


def smallness_gate_consistency():
    """The recorded gate constant matches a recomputation and sorts the data."""
    started = time.perf_counter()
    gate = smallness_gate()
    cfg = load_scenario(gate["profile"] if isinstance(gate.get("profile"), str)
                        else "skyrme-small")
    besov, _, l2 = data_size(cfg)
    rel = abs(besov - gate["besov_value"]) / gate["besov_value"]
    rel_l2 = abs(l2 - gate["l2_value"]) / gate["l2_value"]
    checks = [
        CheckResult("gate_besov_reproducible", rel <= 1e-9, rel, "<= 1e-9 rel"),
        CheckResult("gate_l2_reproducible", rel_l2 <= 1e-9, rel_l2, "<= 1e-9 rel"),
    ]
    big = replace(load_scenario("wavemap-blowup"), N=2048)
    b_big, _, _ = data_size(big)
    checks.append(CheckResult("collapse_data_above_gate",
                              b_big > 10.0 * gate["besov_value"],
                              b_big / gate["besov_value"], "> 10x gate"))
    return _report("smallness-gate", checks, started)


CRITERIA = {
    1: shrinker_exactness,
    2: coefficient_limits,
    3: coefficient_bounds_suite,
    4: solver_convergence,
    5: energy_conservation,
    6: blowup_vs_regularization,
    7: cubic_smallness_scaling,
    8: scattering_trend,
    9: spectral_oracles,
    10: scaling_invariance,
    11: supremum_vs_energy_trend,
    12: dyadic_sobolev_stability,
}

SUITES = {
    "coefficients": (coefficient_limits, coefficient_bounds_suite),
    "grid": (grid_calculus_checks,),
    "solver": (shrinker_exactness, solver_convergence, energy_conservation),
    "spectral": (spectral_oracles, scaling_invariance, dyadic_sobolev_stability),
    "theorems": (blowup_vs_regularization, cubic_smallness_scaling,
                 scattering_trend, supremum_vs_energy_trend,
                 smallness_gate_consistency),
}


def run_suite(name):
    """Execute a named suite; returns the list of ScenarioReports."""
    if name == "all":
        fns = list(dict.fromkeys(fn for suite in SUITES.values() for fn in suite))
    elif name in SUITES:
        fns = list(SUITES[name])
    else:
        raise ConfigError(f"unknown suite {name!r}; "
                          f"choose from {', '.join(sorted(SUITES))} or all")
    return [fn() for fn in fns]


def format_reports(reports):
    lines = []
    for rep in reports:
        for c in rep.checks:
            lines.append(f"{c.line()}   [{rep.scenario}]")
        lines.append(f"{'PASS' if rep.passed else 'FAIL'}  {rep.scenario} "
                     f"({rep.runtime_s:.1f}s)")
    total = sum(len(r.checks) for r in reports)
    bad = sum(1 for r in reports for c in r.checks if not c.passed)
    lines.append(f"{total - bad}/{total} checks passed")
    return "\n".join(lines)

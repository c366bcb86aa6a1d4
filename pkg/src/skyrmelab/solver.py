"""Method-of-lines evolution of the 5+1 semilinear v-equation.

The PDE is reduced to the first-order system (v, v_t) on the radial grid and
stepped with classical RK4.  Spatial derivatives are the 4th-order parity
stencils from grid, so refinement at fixed cfl converges at 4th order overall.

Outer boundary.  The default closure pins the last two nodes (their time
derivatives are forced to zero).  With data that decays before r = R and a run
no longer than the light-travel margin R - r_support, the pinned nodes are
never reached by the solution and the closure is exact by finite speed of
propagation.  For runs that violate that budget a first-order outgoing-wave
closure is available (boundary="sommerfeld"): v ~ G(t-r)/r^2 gives
v_t + v_r + 2 v / r = 0, imposed on the evolved v_t at the last two nodes.
Either way, values at r <= R - t are exactly independent of the choice; the
optional sup_window confines reported sup-norms to that causally clean region.

Blow-up is a flag, not an exception: the gradient detector (growth of
sup|u_r| past growth_threshold times its initial value) and the hard stops
(non-finite state, sup|v| > 1e6) truncate the trace and mark it.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, ContractError, DomainError
from .grid import FieldSamples, Parity, RadialGrid, d_r, laplacian5, radial_integral
from .models import Kind, ModelSpec, _neg_nonlinearity, energy_density_v

GROWTH_THRESHOLD = 100.0
HARD_SUP = 1.0e6
CFL_ENVELOPE = 0.9


@dataclass
class FieldState:
    t: float
    v: np.ndarray
    vt: np.ndarray
    grid: RadialGrid
    model: ModelSpec
    blown_up: bool = False

    def copy(self):
        return FieldState(self.t, self.v.copy(), self.vt.copy(), self.grid, self.model, self.blown_up)


@dataclass
class TraceRow:
    t: float
    total_energy: float
    sup_abs_u: float
    sup_abs_u_r: float
    lightcone_energy: float
    deficit: float
    blowup_flag: int


@dataclass
class DiagnosticsTrace:
    rows: list = field(default_factory=list)
    blew_up: bool = False
    final_state: FieldState = None

    @property
    def times(self):
        return np.array([row.t for row in self.rows])

    def column(self, name):
        return np.array([getattr(row, name) for row in self.rows])


@dataclass
class BlowupReport:
    detected: bool
    t_star_estimate: float
    growth_factor: float
    profile_fit_error: float


@dataclass
class ScatteringDeficit:
    T1: float
    T2: float
    deficit: float


def acceleration(state):
    """v_tt samples: 5D Laplacian plus the model's -N term.  Pure; no boundary."""
    f = FieldSamples(state.v, Parity.EVEN)
    lap = laplacian5(f, state.grid).values
    v_r = d_r(f, state.grid).values
    return lap + _neg_nonlinearity(state.model, state.grid.nodes, state.v, v_r, state.vt)


def _rhs(state, v, vt, boundary):
    """(dv/dt, dvt/dt) with the boundary closure folded in."""
    g = state.grid
    f = FieldSamples(v, Parity.EVEN)
    lap = laplacian5(f, g).values
    v_r = d_r(f, g).values
    acc = lap + _neg_nonlinearity(state.model, g.nodes, v, v_r, vt)
    dv = vt.copy()
    if boundary == "pin":
        dv[-2:] = 0.0
        acc[-2:] = 0.0
    else:  # sommerfeld
        vt_r = d_r(FieldSamples(vt, Parity.EVEN), g).values
        acc[-2:] = -vt_r[-2:] - 2.0 * vt[-2:] / g.nodes[-2:]
    return dv, acc


def step_rk4(state, dt, boundary="pin"):
    """One classical RK4 step of the (v, v_t) system; deterministic."""
    if boundary not in ("pin", "sommerfeld"):
        raise ConfigError(f"unknown boundary closure {boundary!r}")
    h = abs(dt)
    if h > CFL_ENVELOPE * state.grid.dr * (1 + 1e-12):
        raise ConfigError(f"dt={dt} violates the CFL budget {CFL_ENVELOPE} * dr={state.grid.dr}")
    v, vt = state.v, state.vt
    k1v, k1a = _rhs(state, v, vt, boundary)
    k2v, k2a = _rhs(state, v + 0.5 * dt * k1v, vt + 0.5 * dt * k1a, boundary)
    k3v, k3a = _rhs(state, v + 0.5 * dt * k2v, vt + 0.5 * dt * k2a, boundary)
    k4v, k4a = _rhs(state, v + dt * k3v, vt + dt * k3a, boundary)
    v_new = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    vt_new = vt + dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
    blown = not (np.all(np.isfinite(v_new)) and np.all(np.isfinite(vt_new)))
    return FieldState(state.t + dt, v_new, vt_new, state.grid, state.model, blown)


def sup_abs_u(state, window=None):
    u = np.abs(state.grid.nodes * state.v)
    return float(np.max(u if window is None else u[state.grid.nodes <= window]))


def sup_abs_u_r(state, window=None):
    v_r = d_r(FieldSamples(state.v, Parity.EVEN), state.grid).values
    u_r = np.abs(state.v + state.grid.nodes * v_r)
    return float(np.max(u_r if window is None else u_r[state.grid.nodes <= window]))


def total_energy(state):
    v_r = d_r(FieldSamples(state.v, Parity.EVEN), state.grid).values
    dens = energy_density_v(state.model, state.grid.nodes, state.v, v_r, state.vt)
    return radial_integral(dens, state.grid, weight_power=0, warn_tail=False)


def lightcone_energy(state, t0):
    """Energy inside the backward cone r <= t0 - t, truncated to whole cells."""
    radius = t0 - state.t
    if radius <= 0:
        return 0.0
    g = state.grid
    k = min(int(math.floor(radius / g.dr)), g.N)
    if k < 8:
        return 0.0
    sub = RadialGrid(g.nodes[k], k, g.ghost_depth)
    v_r = d_r(FieldSamples(state.v, Parity.EVEN), g).values
    dens = energy_density_v(state.model, g.nodes, state.v, v_r, state.vt)
    return radial_integral(dens[:k + 1], sub, weight_power=0, warn_tail=False)


def _deficit_norm(grid, dv, dvt):
    """sqrt( integral of (dv_r^2 + dvt^2 + dv^2) r^4 dr ): the discrete energy proxy."""
    dv_r = d_r(FieldSamples(dv, Parity.EVEN), grid).values
    dens = dv_r * dv_r + dvt * dvt + dv * dv
    return math.sqrt(max(radial_integral(dens, grid, weight_power=4, warn_tail=False), 0.0))


def integrate(init, dt, T, cadence=0, lightcone_t0=None, track_deficit=False,
              boundary="pin", sup_window=None, observers=(),
              growth_threshold=GROWTH_THRESHOLD):
    """Evolve to time init.t + T (or blow-up), sampling diagnostics as it goes.

    cadence is the step stride between trace rows (0 picks ~256 rows).  The
    deficit column co-evolves a free-wave twin from the same data and measures
    the energy-proxy distance to it.  observers are callables taking the state,
    invoked at every sampled row.
    """
    if T < 0:
        raise ConfigError("T must be >= 0")
    n_steps = max(int(math.ceil(T / dt - 1e-12)), 0) if T > 0 else 0
    dt_actual = T / n_steps if n_steps else 0.0
    if cadence <= 0:
        cadence = max(1, n_steps // 256)
    trace = DiagnosticsTrace()
    state = init.copy()
    twin = None
    if track_deficit and init.model.kind is not Kind.FREE_WAVE_5D:
        twin = FieldState(init.t, init.v.copy(), init.vt.copy(), init.grid,
                          ModelSpec(Kind.FREE_WAVE_5D))

    initial_gradient = None

    def sample(state, twin):
        nonlocal initial_gradient
        sup_u = sup_abs_u(state, sup_window)
        sup_ur = sup_abs_u_r(state, sup_window)
        if initial_gradient is None:
            initial_gradient = max(sup_ur, 1e-300)
        deficit = math.nan
        if twin is not None:
            deficit = _deficit_norm(state.grid, state.v - twin.v, state.vt - twin.vt)
        row = TraceRow(
            t=state.t,
            total_energy=total_energy(state),
            sup_abs_u=sup_u,
            sup_abs_u_r=sup_ur,
            lightcone_energy=lightcone_energy(state, lightcone_t0) if lightcone_t0 else math.nan,
            deficit=deficit,
            blowup_flag=0,
        )
        trace.rows.append(row)
        for obs in observers:
            obs(state)
        return sup_ur > growth_threshold * initial_gradient

    tripped = sample(state, twin)
    for step in range(1, n_steps + 1):
        if tripped:
            break
        state = step_rk4(state, dt_actual, boundary)
        if twin is not None:
            twin = step_rk4(twin, dt_actual, boundary)
        hard = state.blown_up or float(np.max(np.abs(state.v))) > HARD_SUP
        if hard or step % cadence == 0 or step == n_steps:
            if hard:
                trace.blew_up = True
                row = TraceRow(state.t, math.nan, math.nan, math.nan, math.nan, math.nan, 1)
                trace.rows.append(row)
                break
            tripped = sample(state, twin)
            if tripped:
                trace.blew_up = True
                trace.rows[-1].blowup_flag = 1
                break
    trace.final_state = state
    return trace


def detect_blowup(trace, state=None):
    """Gradient-concentration verdict with collapse-time and profile diagnostics.

    t* comes from a straight-line fit of 1/sup|u_r| against t over the final
    decade of growth; the profile check rescales u(t_end, rho (t* - t_end))
    and measures the relative L^2(rho <= 5) misfit against 2 arctan(rho).
    """
    rows = [row for row in trace.rows if math.isfinite(row.sup_abs_u_r)]
    if not rows:
        return BlowupReport(detected=trace.blew_up, t_star_estimate=math.nan,
                            growth_factor=math.nan, profile_fit_error=math.nan)
    sup = np.array([row.sup_abs_u_r for row in rows])
    times = np.array([row.t for row in rows])
    growth = float(np.max(sup) / max(sup[0], 1e-300))
    detected = trace.blew_up or growth >= GROWTH_THRESHOLD
    t_star = math.inf
    fit_error = math.nan
    if detected and np.max(sup) > 0:
        late = sup >= 0.1 * np.max(sup)
        if np.count_nonzero(late) >= 2:
            # 1/sup ~ a (t* - t): intercept of the fitted line with zero
            slope, intercept = np.polyfit(times[late], 1.0 / sup[late], 1)
            if slope < 0:
                t_star = float(-intercept / slope)
        if state is not None and math.isfinite(t_star) and t_star > state.t:
            delta = t_star - state.t
            rho = np.linspace(0.0, 5.0, 501)
            u_resc = np.interp(rho * delta, state.grid.nodes, state.grid.nodes * state.v)
            target = 2.0 * np.arctan(rho)
            fit_error = float(np.sqrt(np.trapezoid((u_resc - target) ** 2, rho)
                                      / np.trapezoid(target**2, rho)))
    return BlowupReport(detected=detected, t_star_estimate=t_star,
                        growth_factor=growth, profile_fit_error=fit_error)


def scattering_deficit(init, dt, T1, T2, boundary="pin"):
    """Distance at T2 between the nonlinear flow and the free flow handed off at T1."""
    if not T2 > T1 >= 0:
        raise ConfigError("need T2 > T1 >= 0")
    state = init.copy()
    if T1 > 0:
        tr = integrate(state, dt, T1, boundary=boundary, cadence=10**9)
        if tr.blew_up:
            raise DomainError("blow-up before the handoff time")
        state = tr.final_state
    free = FieldState(state.t, state.v.copy(), state.vt.copy(), state.grid,
                      ModelSpec(Kind.FREE_WAVE_5D))
    tr_nl = integrate(state, dt, T2 - T1, boundary=boundary, cadence=10**9)
    if tr_nl.blew_up:
        raise DomainError("blow-up before the measurement time")
    tr_free = integrate(free, dt, T2 - T1, boundary=boundary, cadence=10**9)
    a, b = tr_nl.final_state, tr_free.final_state
    value = _deficit_norm(init.grid, a.v - b.v, a.vt - b.vt)
    return ScatteringDeficit(T1=T1, T2=T2, deficit=value)


@dataclass
class ConvergenceReport:
    resolutions: list
    errors: list
    orders: list
    observed_order: float


def convergence_study(data_fn, model, resolutions, R, T, cfl=0.5, exact=None, boundary="pin"):
    """Errors and observed order at time T over doubling resolutions.

    data_fn(grid) -> (v, vt) builds the initial data per grid; exact, if given,
    is exact(grid, t) -> v and otherwise the finest run restricted to each
    coarser grid serves as reference.  Errors are L^2(r^4 dr) of the v field.
    """
    res = sorted(int(n) for n in resolutions)
    if len(res) < 3 or len(set(res)) != len(res):
        raise ConfigError("need at least three distinct resolutions")
    for a, b in zip(res, res[1:]):
        if b != 2 * a:
            raise ConfigError("resolutions must double")
    finals = []
    for n in res:
        g = RadialGrid(R, n)
        v0, vt0 = data_fn(g)
        st = FieldState(0.0, np.asarray(v0, float), np.asarray(vt0, float), g, model)
        tr = integrate(st, cfl * g.dr, T, boundary=boundary, cadence=10**9)
        if tr.blew_up:
            raise DomainError(f"blow-up during the N={n} run")
        finals.append(tr.final_state)
    errors = []
    if exact is not None:
        for st in finals:
            diff = st.v - exact(st.grid, st.t)
            errors.append(math.sqrt(radial_integral(diff * diff, st.grid, 4, warn_tail=False)))
        measured = res
    else:
        ref = finals[-1]
        for st in finals[:-1]:
            stride = ref.grid.N // st.grid.N
            diff = st.v - ref.v[::stride]
            errors.append(math.sqrt(radial_integral(diff * diff, st.grid, 4, warn_tail=False)))
        measured = res[:-1]
    orders = [math.log2(a / b) if b > 0 else math.inf for a, b in zip(errors, errors[1:])]
    if len(errors) >= 2 and all(e > 0 for e in errors):
        slope = np.polyfit(np.log([R / n for n in measured]), np.log(errors), 1)[0]
    else:
        slope = math.inf
    return ConvergenceReport(resolutions=res, errors=errors, orders=orders,
                             observed_order=float(slope))

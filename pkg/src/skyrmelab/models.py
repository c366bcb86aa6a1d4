"""Field equations in both radial formulations.

Each model evolves one angular field u(t, r) on r >= 0.  The substitution
u = r v turns every u-equation here into a semilinear wave equation for v with
the 5D radial d'Alembertian as linear part:

    v_tt - v_rr - (4/r) v_r + N(r, v, v_r, v_t) = 0

with nonlinearities (c_i = tilde_h coefficients, functions of u = rv; D the
quartic-term denominator):

    wave map            N = c1 v^3
    Skyrme              N = [c1 v^3 + c2 v^5 + c3 v^3 v_r + c4 v (v_t^2 - v_r^2)] / D
    repulsive (AN)      N = c1 v^3 + c6 v^5
    Skyrme, small-u     N = 2 a^2 v (v_t^2 - v_r^2) / (1 + 2 a^2 v^2)
    repulsive, small-u  N = v^5
    free 5D wave        N = 0

The small-u variants are the scale-critical truncations of the full equations;
their v-forms above are exact consequences of the u-forms (the cubic 2u/r^2
pieces cancel against the Laplacian shift), not small-u limits of N.  All six
conversions, the energy fluxes below, and the exactness of the closed-form
collapse solution are checked symbolically by scripts/verify_algebra_symbolic.py.

Energy densities are returned as (integrand) * r^2 so a plain dr-integral
gives the conserved total.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .coefficients import _tilde_h_raw, sinc, skyrme_denominator, tilde_h
from .errors import DomainError


class Kind(str, Enum):
    WAVE_MAP = "wave-map"
    SKYRME = "skyrme"
    ADKINS_NAPPI = "adkins-nappi"
    SKYRME_APPROX = "skyrme-approx"
    ADKINS_NAPPI_APPROX = "adkins-nappi-approx"
    FREE_WAVE_5D = "free-wave-5d"


ALPHA_KINDS = (Kind.SKYRME, Kind.SKYRME_APPROX)


@dataclass(frozen=True)
class ModelSpec:
    kind: Kind
    alpha: float = None

    def __post_init__(self):
        if self.kind in ALPHA_KINDS:
            if self.alpha is None or not np.isfinite(self.alpha) or self.alpha <= 0:
                raise DomainError(f"{self.kind.value} needs alpha > 0, got {self.alpha}")


@dataclass
class PointData:
    r: float
    v: float
    v_r: float
    v_t: float

    @property
    def u(self):
        return self.r * self.v


def _neg_nonlinearity(model, r, v, v_r, v_t):
    """-N(r, v, v_r, v_t), vectorized; NaN propagates (the solver's blow-up flag)."""
    kind, alpha = model.kind, model.alpha
    if kind is Kind.FREE_WAVE_5D:
        return np.zeros_like(np.asarray(v, dtype=float))
    u = r * v
    v3 = v * v * v
    if kind is Kind.WAVE_MAP:
        return -(_tilde_h_raw(1, u) * v3)
    if kind is Kind.ADKINS_NAPPI:
        return -((_tilde_h_raw(1, u) + _tilde_h_raw(6, u) * v * v) * v3)
    if kind is Kind.ADKINS_NAPPI_APPROX:
        return -(v3 * v * v)
    if kind is Kind.SKYRME_APPROX:
        a2 = alpha * alpha
        return -(2.0 * a2 * v * (v_t * v_t - v_r * v_r)) / (1.0 + 2.0 * a2 * v * v)
    # full Skyrme
    num = (_tilde_h_raw(1, u) * v3
           + _tilde_h_raw(2, u, alpha) * v3 * v * v
           + _tilde_h_raw(3, u, alpha) * v3 * v_r
           + _tilde_h_raw(4, u, alpha) * v * (v_t * v_t - v_r * v_r))
    return -num / skyrme_denominator(r, v, alpha)


def rhs_v(model, p):
    """Nonlinear part of v_tt at one point: returns -N (the solver adds the Laplacian)."""
    out = _neg_nonlinearity(model, p.r, p.v, p.v_r, p.v_t)
    return float(out)


def rhs_u(model, r, u, u_r, u_t, u_rr):
    """u_tt solved explicitly from the u-form equation; r > 0 only."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("u-form needs r > 0; use the v-form at the axis")
    kind, alpha = model.kind, model.alpha
    r2 = r * r
    if kind is Kind.FREE_WAVE_5D:
        return u_rr + 2.0 * u_r / r - 2.0 * u / r2
    if kind is Kind.WAVE_MAP:
        return u_rr + 2.0 * u_r / r - np.sin(2.0 * u) / r2
    if kind is Kind.ADKINS_NAPPI:
        su, cu = np.sin(u), np.cos(u)
        return (u_rr + 2.0 * u_r / r - np.sin(2.0 * u) / r2
                - (u - su * cu) * (1.0 - np.cos(2.0 * u)) / (r2 * r2))
    if kind is Kind.ADKINS_NAPPI_APPROX:
        return u_rr + 2.0 * u_r / r - 2.0 * u / r2 - u**5 / (r2 * r2)
    a2 = alpha * alpha
    if kind is Kind.SKYRME_APPROX:
        den = 1.0 + 2.0 * a2 * u * u / r2
        return u_rr + (2.0 * u_r / r
                       - (2.0 * u / r2) * (1.0 + a2 * (u_t**2 - u_r**2 + u * u / r2))) / den
    su = np.sin(u)
    den = 1.0 + 2.0 * a2 * su * su / r2
    return u_rr + (2.0 * u_r / r
                   - (np.sin(2.0 * u) / r2) * (1.0 + a2 * (u_t**2 - u_r**2 + su * su / r2))) / den


def energy_density(model, r, u, u_r, u_t):
    """Conserved-energy integrand times r^2, in u-variables; r > 0 (or r = 0 with u = 0)."""
    r = np.asarray(r, dtype=float)
    scalar = np.ndim(r) == 0 and np.ndim(u) == 0
    u = np.broadcast_to(np.asarray(u, dtype=float), r.shape) if not scalar else u
    if np.any(r < 0):
        raise DomainError("r must be >= 0")
    if np.any((np.asarray(r) == 0) & (np.asarray(u) != 0)):
        raise DomainError("at r = 0 the angular field must vanish")
    rs = np.where(np.asarray(r) == 0, 1.0, r)  # axis rows are all-zero anyway
    kind, alpha = model.kind, model.alpha
    kin = (np.asarray(u_t) ** 2 + np.asarray(u_r) ** 2) * r * r / 2.0
    if kind is Kind.FREE_WAVE_5D:
        out = np.asarray(u_t) ** 2 * r * r / 2.0 + (r * np.asarray(u_r) - u) ** 2 / 2.0
    elif kind is Kind.WAVE_MAP:
        out = kin + np.sin(u) ** 2
    elif kind is Kind.SKYRME:
        a2, su = alpha * alpha, np.sin(u)
        D = 1.0 + 2.0 * a2 * (su / rs) ** 2
        out = D * kin + su * su + a2 * su**4 / (2.0 * rs * rs)
    elif kind is Kind.ADKINS_NAPPI:
        su, cu = np.sin(u), np.cos(u)
        out = kin + su * su + (u - su * cu) ** 2 / (2.0 * rs * rs)
    elif kind is Kind.SKYRME_APPROX:
        a2 = alpha * alpha
        out = (1.0 + 2.0 * a2 * (u / rs) ** 2) * kin + u * u + a2 * u**4 / (2.0 * rs * rs)
    else:  # ADKINS_NAPPI_APPROX
        out = kin + u * u + u**6 / (6.0 * rs * rs)
    return float(out) if scalar else out


def energy_density_v(model, r, v, v_r, v_t):
    """Same density evaluated stably from v-variables; valid down to r = 0."""
    r = np.asarray(r, dtype=float)
    v = np.asarray(v, dtype=float)
    u = r * v
    u_t = r * np.asarray(v_t)
    u_r = v + r * np.asarray(v_r)
    kind, alpha = model.kind, model.alpha
    kin = (u_t * u_t + u_r * u_r) * r * r / 2.0
    if kind is Kind.FREE_WAVE_5D:
        return r**4 * (np.asarray(v_t) ** 2 + np.asarray(v_r) ** 2) / 2.0
    if kind is Kind.WAVE_MAP:
        return kin + np.sin(u) ** 2
    if kind is Kind.SKYRME:
        a2, su = alpha * alpha, np.sin(u)
        sin_over_r = v * sinc(u)  # sin(u)/r, finite at the axis
        D = 1.0 + 2.0 * a2 * sin_over_r * sin_over_r
        return D * kin + su * su + a2 * su * su * sin_over_r * sin_over_r / 2.0
    if kind is Kind.ADKINS_NAPPI:
        su = np.sin(u)
        q = -0.5 * _tilde_h_raw(1, u)  # (u - sin u cos u)/u^3, even, -> 2/3
        return kin + su * su + q * q * u**4 * v * v / 2.0
    if kind is Kind.SKYRME_APPROX:
        a2 = alpha * alpha
        return (1.0 + 2.0 * a2 * v * v) * kin + u * u + a2 * u * u * v * v / 2.0
    return kin + u * u + u**4 * v * v / 6.0


def null_form(v_t, v_r):
    """Q(v, v) = v_t^2 - v_r^2; vanishes along characteristic directions."""
    return v_t * v_t - v_r * v_r

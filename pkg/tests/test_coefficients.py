"""Coefficient functions: frozen high-precision oracles, parity, signs, switch continuity."""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from skyrmelab.coefficients import (
    SERIES_SWITCH,
    _closed_eval,
    _series_eval,
    check_coeff_bounds,
    check_sin_inequality,
    skyrme_denominator,
    tilde_h,
)
from skyrmelab.errors import DomainError

# 50-digit mpmath evaluations of the alpha-stripped closed forms, frozen.
# Columns: c1 .. c6.
ORACLE = {
    0.001: [-1.3333330666666920635, -0.66666613333348783066, 0.001333332977777815873,
            1.9999986666669333333, -1.3333330666666920635, 1.3333326222223957672],
    0.02: [-1.3332266707300684316, -0.66645335805132084365, 0.026663822344124094576,
           1.9994667093317079726, -1.3332266707300684316, 1.3330489166544232081],
    0.049: [-1.3326932130547836631, -0.6653870236362117389, 0.065291513337208698087,
            1.9968002035954554644, -1.3326932130547836631, 1.3316269556485453928],
    0.05: [-1.3326668253747815455, -0.6653342985538950819, 0.066622234125220625557,
           1.9966683329365630461, -1.3326668253747815455, 1.3315566398061013375],
    0.051: [-1.332639905123137039, -0.66528051143548575432, 0.067952848341793384649,
            1.9965338036067747206, -1.332639905123137039, 1.3314849069432640352],
    0.3: [-1.3095380224060978814, -0.61990016454407035603, 0.3904920793934144888,
          1.8821415779834511907, -1.3095380224060978814, 1.2707202968664278374],
    1.0: [-1.0907025731743183046, -0.26544808958585878485, 1.0136988194429213832,
          0.9092974268256816954, -1.0907025731743183046, 0.77229749930731948],
    2.0: [-0.59460031191349103142, 0.075045911622559482355, 0.79181215286986710435,
          -0.37840124765396412569, -0.59460031191349103142, 0.12290712659490729373],
    5.0: [-0.084352168887114958507, 0.0041920898893144491247, 0.072946833336372824309,
          -0.10880422217787396268, -0.084352168887114958507, 0.0031025934443228333061],
    -17.3: [-0.0066906839509994366439, 8.1746844773967109441e-6, -0.0010559846459966672389,
            -0.0024547996946213931578, -0.0066906839509994366439, 2.2345102979154365326e-5],
}

LIMITS = {1: -4.0 / 3.0, 2: -2.0 / 3.0, 3: 0.0, 4: 2.0, 5: -4.0 / 3.0, 6: 4.0 / 3.0}


@pytest.mark.parametrize("u", sorted(ORACLE))
@pytest.mark.parametrize("cid", range(1, 7))
def test_frozen_oracle(cid, u):
    got = tilde_h(cid, u, alpha=1.0)
    want = ORACLE[u][cid - 1]
    assert got == pytest.approx(want, rel=1e-12, abs=1e-300)


def test_alpha_square_scaling():
    for cid in (2, 3, 4):
        base = tilde_h(cid, 1.0, alpha=1.0)
        assert tilde_h(cid, 1.0, alpha=1.3) == pytest.approx(1.69 * base, rel=1e-14)
    for cid in (1, 5, 6):
        assert tilde_h(cid, 1.0) == tilde_h(cid, 1.0, alpha=7.0)


def test_limits_at_zero():
    for cid, lim in LIMITS.items():
        alpha2 = 1.0 if cid in (1, 5, 6) else 1.0  # alpha=1 keeps the stripped values
        assert abs(tilde_h(cid, 0.0, alpha=1.0) - lim * alpha2) <= 1e-10


def test_value_at_half_pi():
    assert tilde_h(1, math.pi / 2) == pytest.approx(-8.0 / math.pi**2, rel=1e-13)


def test_switch_continuity():
    eps = SERIES_SWITCH
    for cid in range(1, 7):
        for u in (eps, -eps):
            assert abs(_series_eval(cid, np.float64(u)) - _closed_eval(cid, np.float64(u))) <= 1e-12


def test_vectorized_matches_scalar():
    us = np.array(sorted(ORACLE))
    vals = tilde_h(3, us, alpha=1.0)
    for u, got in zip(us, vals):
        assert got == pytest.approx(tilde_h(3, float(u), alpha=1.0), rel=0, abs=0)


@given(st.floats(min_value=-80.0, max_value=80.0, allow_nan=False))
def test_parity(u):
    for cid in (1, 2, 4, 5, 6):
        a, b = tilde_h(cid, u, alpha=1.0), tilde_h(cid, -u, alpha=1.0)
        assert a == pytest.approx(b, rel=1e-13, abs=1e-300)
    a, b = tilde_h(3, u, alpha=1.0), tilde_h(3, -u, alpha=1.0)
    assert a == pytest.approx(-b, rel=1e-13, abs=1e-300)


@given(st.floats(min_value=-1e4, max_value=1e4, allow_nan=False))
def test_signs(u):
    assert tilde_h(1, u) <= 1e-15
    assert tilde_h(5, u) <= 1e-15
    assert tilde_h(6, u) >= -1e-15


def test_domain_errors():
    with pytest.raises(DomainError):
        tilde_h(2, 1.0)  # alpha missing
    with pytest.raises(DomainError):
        tilde_h(4, 1.0, alpha=-0.5)
    with pytest.raises(DomainError):
        tilde_h(7, 1.0)
    with pytest.raises(DomainError):
        tilde_h(1, math.nan)
    with pytest.raises(DomainError):
        skyrme_denominator(-1.0, 0.5, 1.0)


def test_skyrme_denominator_values():
    assert skyrme_denominator(0.0, 0.0, 1.0) == 1.0
    assert skyrme_denominator(0.0, 1.0, 1.0) == pytest.approx(3.0, rel=1e-14)
    assert skyrme_denominator(2.0, math.pi / 2, 1.0) == pytest.approx(1.0, rel=0, abs=1e-14)


@given(st.floats(min_value=0, max_value=100, allow_nan=False),
       st.floats(min_value=-50, max_value=50, allow_nan=False),
       st.floats(min_value=1e-3, max_value=10, allow_nan=False))
def test_skyrme_denominator_at_least_one(r, v, alpha):
    assert skyrme_denominator(r, v, alpha) >= 1.0


def test_coeff_bound_reports():
    for cid in range(1, 7):
        rep = check_coeff_bounds(cid, alpha=1.0)
        assert all(math.isfinite(s) for s in rep.weighted_sup.values())
        if cid in (1, 5, 6):
            assert rep.sign_ok


def test_sin_inequality_bounds():
    for alpha in (0.5, 1.0, 2.0):
        rep = check_sin_inequality(alpha)
        for j in (0, 1, 2):
            assert rep.sampled_sup[j] <= rep.analytic_bound[j] * (1 + 1e-12)
        assert rep.sampled_sup[0] > 0.99  # bound j=0 is tight as sin(u)/r -> 0
    rep = check_sin_inequality(1.0)
    assert rep.analytic_bound[2] == pytest.approx(0.5)

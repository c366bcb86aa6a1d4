"""Stencil exactness, parity handling, refinement orders, quadrature oracles."""
import math

import numpy as np
import pytest

from skyrmelab.errors import ConfigError, ContractError
from skyrmelab.grid import FieldSamples, Parity, RadialGrid, d_r, laplacian5, radial_integral


def even_field(g, fn):
    return FieldSamples(fn(g.nodes), Parity.EVEN)


def test_grid_validation():
    with pytest.raises(ConfigError):
        RadialGrid(10.0, 4)
    with pytest.raises(ConfigError):
        RadialGrid(-1.0, 64)
    g = RadialGrid(10.0, 64)
    assert g.nodes[0] == 0.0 and g.nodes[-1] == 10.0
    assert g.dr == pytest.approx(10.0 / 64)


def test_odd_field_must_vanish_at_axis():
    with pytest.raises(ContractError):
        FieldSamples(np.ones(65), Parity.ODD)


def test_d_r_polynomial_exactness():
    g = RadialGrid(4.0, 64)
    f = even_field(g, lambda r: r**2)
    got = d_r(f, g)
    assert got.parity is Parity.ODD
    assert np.max(np.abs(got.values - 2 * g.nodes)) <= 1e-12
    f4 = even_field(g, lambda r: r**4 - 3 * r**2 + 7)
    got4 = d_r(f4, g)
    assert np.max(np.abs(got4.values - (4 * g.nodes**3 - 6 * g.nodes))) <= 1e-10


def test_d_r_constant_is_zero():
    g = RadialGrid(4.0, 32)
    got = d_r(even_field(g, lambda r: np.full_like(r, 2.5)), g)
    assert np.all(got.values == 0.0)


def test_d_r_odd_input():
    g = RadialGrid(math.pi, 256)
    f = FieldSamples(np.sin(g.nodes), Parity.ODD)
    got = d_r(f, g)
    assert got.parity is Parity.EVEN
    assert np.max(np.abs(got.values - np.cos(g.nodes))) <= 5e-8


def test_refinement_order_d_r():
    errs = []
    for n in (64, 128, 256):
        g = RadialGrid(6.0, n)
        f = even_field(g, lambda r: np.exp(-(r**2)) * np.cos(r))
        exact = -np.exp(-(g.nodes**2)) * (2 * g.nodes * np.cos(g.nodes) + np.sin(g.nodes))
        errs.append(np.max(np.abs(d_r(f, g).values - exact)))
    assert errs[0] / errs[1] >= 14 and errs[1] / errs[2] >= 14


def test_laplacian5_polynomial():
    g = RadialGrid(5.0, 64)
    got = laplacian5(even_field(g, lambda r: r**2), g)
    assert got.parity is Parity.EVEN
    assert np.max(np.abs(got.values - 10.0)) <= 1e-11


def test_laplacian5_axis_limit():
    # for even smooth f, (f_rr + 4 f_r / r)(0) = 5 f''(0)
    g = RadialGrid(4.0, 512)
    f = even_field(g, lambda r: np.exp(-(r**2)))
    got = laplacian5(f, g)
    assert got.values[0] == pytest.approx(-10.0, rel=1e-8)


def test_laplacian5_refinement():
    errs = []
    for n in (64, 128, 256):
        g = RadialGrid(6.0, n)
        f = even_field(g, lambda r: np.exp(-(r**2)))
        e = np.exp(-(g.nodes**2))
        exact = e * (4 * g.nodes**2 - 2) - 8 * e  # f_rr + 4 f_r / r for a Gaussian
        errs.append(np.max(np.abs(laplacian5(f, g).values - exact)))
    assert errs[0] / errs[1] >= 14 and errs[1] / errs[2] >= 14


def test_laplacian5_rejects_odd():
    g = RadialGrid(4.0, 32)
    f = FieldSamples(np.zeros(33), Parity.ODD)
    with pytest.raises(ContractError):
        laplacian5(f, g)


def test_radial_integral_exact_cubic():
    g = RadialGrid(1.0, 96)
    f = even_field(g, lambda r: np.ones_like(r))
    val = radial_integral(f, g, weight_power=2, warn_tail=False)
    assert val == pytest.approx(1.0 / 3.0, abs=1e-13)


def test_radial_integral_gaussian_oracle():
    g = RadialGrid(10.0, 4096)
    val = radial_integral(even_field(g, lambda r: np.exp(-(r**2))), g, weight_power=2)
    assert val == pytest.approx(math.sqrt(math.pi) / 4, abs=1e-10)


def test_radial_integral_zero():
    g = RadialGrid(3.0, 16)
    assert radial_integral(even_field(g, np.zeros_like), g, weight_power=2) == 0.0


def test_radial_integral_odd_interval_count():
    # N = 9 intervals exercises the 3/8 closure; integrand r^3 is still exact
    g = RadialGrid(2.0, 9)
    val = radial_integral(FieldSamples(g.nodes**3, Parity.ODD), g, warn_tail=False)
    assert val == pytest.approx(2.0**4 / 4, rel=1e-13)


def test_radial_integral_tail_warning():
    g = RadialGrid(2.0, 16)
    with pytest.warns(RuntimeWarning):
        radial_integral(even_field(g, lambda r: np.ones_like(r)), g, weight_power=0)


def test_refinement_order_integral():
    # integral of r^2 cos r on [0, 8]: r^2 sin r + 2 r cos r - 2 sin r at r = 8
    exact = 64 * math.sin(8.0) + 16 * math.cos(8.0) - 2 * math.sin(8.0)
    errs = []
    for n in (16, 32, 64):
        g = RadialGrid(8.0, n)
        f = even_field(g, lambda r: np.cos(r))
        errs.append(abs(radial_integral(f, g, weight_power=2, warn_tail=False) - exact))
    assert errs[0] / errs[1] >= 14 and errs[1] / errs[2] >= 14

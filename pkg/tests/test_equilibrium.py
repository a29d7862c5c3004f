import numpy as np
import pytest

from strainwave import Column, MaterialParams, dq0_dz, p0, q0, sound_speed_q
from strainwave.equilibrium import (equilibrium_strain,
                                    equilibrium_strain_gradient,
                                    hydrostatic_pressure)
from strainwave.statelaws import strain_density


def test_surface_pressure(column, water):
    assert p0(0.0, column) == water.p_a


def test_bottom_pressure(column):
    assert abs(p0(-3700.0, column) - 363.6e5) <= 1e-3 * 363.6e5


def test_midpoint_pressure(column, water):
    expected = water.p_a + water.rho0 * water.g * 1850.0
    assert abs(p0(-1850.0, column) - expected) <= 1e-12 * expected
    assert abs(expected - 182.3e5) <= 1e-3 * 182.3e5


def test_pressure_is_linear(column, water):
    z = np.linspace(-3700.0, 0.0, 11)
    slopes = np.diff(p0(z, column)) / np.diff(z)
    assert np.allclose(slopes, -water.rho0 * water.g, rtol=1e-12)


def test_bottom_strain(column):
    assert abs(q0(-3700.0, column) - 1.01288) <= 1e-4


def test_surface_strain(column, water):
    val = q0(0.0, column)
    assert val == strain_density(water.p_a, water)
    assert abs(val - 1.0000370) <= 1e-6


def test_surface_strain_vacuum():
    params = MaterialParams(rho0=1000.0, c0=1647.0, s0=1647.0 / 858.0, p_a=0.0)
    col = Column(z_f=-3700.0, params=params)
    assert q0(0.0, col) == 1.0


def test_q0_matches_strain_of_p0(column, water):
    z = np.linspace(-3700.0, 0.0, 23)
    assert np.allclose(q0(z, column), strain_density(p0(z, column), water), rtol=1e-14)


def test_q0_decreasing_upward(column):
    rng = np.random.default_rng(3)
    for _ in range(50):
        a, b = np.sort(rng.uniform(-3700.0, 0.0, 2))
        if a == b:
            continue
        assert q0(a, column) > q0(b, column)


def test_gradient_sign_and_value(column, water):
    z = np.linspace(-3700.0, 0.0, 17)
    grad = dq0_dz(z, column)
    assert np.all(grad < 0.0)
    bottom = dq0_dz(-3700.0, column)
    expected = -water.g * q0(-3700.0, column) / sound_speed_q(q0(-3700.0, column), water) ** 2
    assert abs(bottom - expected) == 0.0
    assert abs(bottom - (-3.32e-6)) <= 0.01e-6


def test_gradient_finite_difference(column):
    h = 0.01
    fd = (q0(-1000.0 + h, column) - q0(-1000.0 - h, column)) / (2 * h)
    grad = dq0_dz(-1000.0, column)
    assert abs(grad - fd) <= 1e-6 * abs(fd)


def test_hydrostatic_consistency(column, water):
    # c(q0)^2 * dq0/dz + g*q0 = 0 pointwise
    z = np.linspace(-3700.0, 0.0, 101)
    resid = sound_speed_q(q0(z, column), water) ** 2 * dq0_dz(z, column) \
        + water.g * q0(z, column)
    assert np.max(np.abs(resid)) <= 1e-10 * water.g * np.max(q0(z, column))


def test_range_checks(column):
    for fn in (p0, q0, dq0_dz):
        with pytest.raises(ValueError):
            fn(0.5, column)
        with pytest.raises(ValueError):
            fn(-3700.1, column)


def test_column_validation(water):
    with pytest.raises(ValueError):
        Column(z_f=0.0, params=water)
    with pytest.raises(ValueError):
        Column(z_f=10.0, params=water)
    assert Column(z_f=-3700.0, params=water).depth == 3700.0


def test_unchecked_helpers_extend_below_floor(water):
    # the raw evaluators extrapolate the resting law below the floor,
    # which the wave-train construction relies on
    deep = -5000.0
    p = hydrostatic_pressure(deep, water)
    assert p > hydrostatic_pressure(-3700.0, water)
    assert equilibrium_strain(deep, water) == strain_density(p, water)
    assert equilibrium_strain_gradient(deep, water) < 0.0

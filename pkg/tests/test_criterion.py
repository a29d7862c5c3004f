import numpy as np
import pytest

from strainwave import (Scenario, incidence_transform, integrate_profile,
                        is_tsunami, min_wavelength, track_shock)


def test_min_wavelength_reference_case(water):
    lam = min_wavelength(3700.0, 25, 1647.0, water)
    assert abs(lam - 21400.0) <= 0.01 * 21400.0


def test_min_wavelength_no_interactions(water):
    assert min_wavelength(3700.0, 0, 1647.0, water) == 0.0


def test_min_wavelength_depth_scaling(water):
    rng = np.random.default_rng(5)
    for _ in range(20):
        H = rng.uniform(100.0, 8000.0)
        s = rng.uniform(1.1, 4.0)
        base = min_wavelength(H, 25, 1647.0, water)
        scaled = min_wavelength(s * H, 25, 1647.0, water)
        assert abs(scaled - s ** 1.5 * base) <= 1e-12 * scaled
    doubled = min_wavelength(7400.0, 25, 1647.0, water)
    assert abs(doubled - 2.0 ** 1.5 * min_wavelength(3700.0, 25, 1647.0, water)) \
        <= 1e-12 * doubled


def test_min_wavelength_validation(water):
    with pytest.raises(ValueError):
        min_wavelength(-1.0, 25, 1647.0, water)
    with pytest.raises(ValueError):
        min_wavelength(3700.0, -1, 1647.0, water)
    with pytest.raises(ValueError):
        min_wavelength(3700.0, 25, 0.0, water)


def test_is_tsunami_verdicts(water):
    assert is_tsunami(21400.0, 3700.0, 25, 1647.0, water)
    assert not is_tsunami(10000.0, 3700.0, 25, 1647.0, water)
    bound = min_wavelength(3700.0, 25, 1647.0, water)
    assert is_tsunami(bound, 3700.0, 25, 1647.0, water)  # boundary inclusive
    assert not is_tsunami(np.nextafter(bound, 0.0), 3700.0, 25, 1647.0, water)


def test_incidence_identity(scenario):
    assert incidence_transform(scenario, 0.0) == scenario


def test_incidence_sixty_degrees(scenario):
    tilted = incidence_transform(scenario, np.pi / 3.0)
    assert abs(tilted.column.params.g - 4.9) <= 1e-12 * 4.9
    assert abs(tilted.column.z_f - (-7400.0)) <= 1e-9
    assert tilted.q_ref == scenario.q_ref
    assert tilted.k == scenario.k
    assert tilted.column.params.rho0 == scenario.column.params.rho0
    assert tilted.column.params.p_a == scenario.column.params.p_a


def test_incidence_composes(scenario):
    tilted = incidence_transform(scenario, 0.7)
    assert incidence_transform(tilted, 0.0) == tilted


def test_incidence_rejects_grazing(scenario):
    with pytest.raises(ValueError):
        incidence_transform(scenario, np.pi / 2.0)
    with pytest.raises(ValueError):
        incidence_transform(scenario, -0.1)
    with pytest.raises(ValueError):
        incidence_transform(scenario, 2.0)


def test_incidence_preserves_bottom_pressure(scenario, water):
    # the stretched column under reduced gravity has the same floor pressure,
    # hence the same forcing state and wave speed
    from strainwave import p0, reference_state
    tilted = incidence_transform(scenario, np.pi / 3.0)
    assert abs(p0(tilted.column.z_f, tilted.column)
               - p0(scenario.column.z_f, scenario.column)) <= 1e-6
    r0 = reference_state(scenario)
    r1 = reference_state(tilted)
    assert abs(r0.A - r1.A) <= 1e-9 * r0.A


def test_incidence_delays_arrival(column):
    arrivals = []
    for phi in [0.0, np.pi / 6.0, np.pi / 3.0]:
        sc = incidence_transform(
            Scenario(column=column, q_ref=1.1296, k=1.0, grid_step=2.0), phi)
        prof = integrate_profile(sc)
        path = track_shock(prof, sc, t_max=10.0)
        assert path.reached_surface
        arrivals.append(path.arrival_time)
    assert arrivals[0] < arrivals[1] < arrivals[2]

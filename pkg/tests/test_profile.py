import numpy as np
import pytest

from strainwave import (Scenario, SonicSingularityError, integrate_profile,
                        profile_rhs, profile_source, reference_state,
                        sound_speed_q)
from strainwave.equilibrium import equilibrium_strain
from strainwave.profile import _march_inverted


def test_reference_state_values(scenario, water):
    ref = reference_state(scenario)
    assert abs(ref.c_ref - 2629.5) <= 0.5
    assert abs(ref.w_ref - 303.0) <= 0.5
    assert abs(ref.A - 2932.5) <= 1.0
    assert abs(ref.A / water.c0 - 1.78) <= 0.01


def test_reference_state_identities(scenario, water):
    ref = reference_state(scenario)
    assert abs(ref.A - (ref.w_ref + ref.c_ref)) <= 1e-12 * ref.A
    q0f = equilibrium_strain(scenario.column.z_f, water)
    assert abs(ref.A - ref.c_ref * scenario.q_ref / q0f) <= 1e-12 * ref.A
    assert abs(ref.w_ref - ref.c_ref * (scenario.q_ref / q0f - 1.0)) <= 1e-12 * ref.w_ref


def test_reference_state_vanishing_forcing(column, water):
    q0f = equilibrium_strain(column.z_f, water)
    sc = Scenario(column=column, q_ref=q0f * (1.0 + 1e-9), k=1.0)
    ref = reference_state(sc)
    assert ref.w_ref < 1e-4
    assert abs(ref.A - sound_speed_q(q0f, water)) <= 1e-6 * ref.A


def test_scenario_rejects_subequilibrium_forcing(column, water):
    q0f = equilibrium_strain(column.z_f, water)
    with pytest.raises(ValueError):
        Scenario(column=column, q_ref=q0f, k=1.0)
    with pytest.raises(ValueError):
        Scenario(column=column, q_ref=1.0, k=1.0)
    with pytest.raises(ValueError):
        Scenario(column=column, q_ref=1.1296, k=-0.5)
    with pytest.raises(ValueError):
        Scenario(column=column, q_ref=1.1296, form="other")


def test_rhs_equilibrium_is_fixed_point_corrected(scenario):
    assert profile_rhs(-2000.0, 0.0, scenario) == 0.0


def test_rhs_equilibrium_literal_form_drifts(scenario, column, water):
    literal = Scenario(column=column, q_ref=scenario.q_ref, k=scenario.k, form="literal")
    ref = reference_state(literal)
    z = column.z_f
    got = profile_rhs(z, 0.0, literal, ref)
    # independent evaluation of -g A^2 q0 / (c(q0)^2 (q0^2 c(q0)^2 - q0^2 A^2))
    q0f = equilibrium_strain(z, water)
    c0f = sound_speed_q(q0f, water)
    expected = -water.g * ref.A ** 2 * q0f / (c0f ** 2 * (q0f ** 2 * c0f ** 2 - q0f ** 2 * ref.A ** 2))
    assert abs(got - expected) <= 1e-12 * abs(expected)
    assert got > 0.0


def test_rhs_sonic_at_forcing_point(scenario, water):
    # the reference coupling puts (z_f, eta_ref) exactly on the sonic locus:
    # the slope there is infinite and must be reported, not returned
    q0f = equilibrium_strain(scenario.column.z_f, water)
    with pytest.raises(SonicSingularityError):
        profile_rhs(scenario.column.z_f, scenario.q_ref - q0f, scenario)


def test_rhs_near_sonic_sign(scenario, water):
    # just below the sonic locus the coefficient is negative and the
    # friction-dominated source positive, so the deviation climbs steeply
    q0f = equilibrium_strain(scenario.column.z_f, water)
    eta = 0.95 * (scenario.q_ref - q0f)
    assert profile_source(scenario.column.z_f, eta, scenario) > 0.0
    assert profile_rhs(scenario.column.z_f, eta, scenario) > 0.0


def test_fixed_point_integration(scenario):
    prof = integrate_profile(scenario, initial_eta=0.0)
    assert prof.z[0] == scenario.column.z_f and prof.z[-1] == 0.0
    assert np.max(np.abs(prof.eta)) <= 1e-12


def test_literal_form_leaves_equilibrium(column):
    literal = Scenario(column=column, q_ref=1.1296, k=1.0, form="literal")
    prof = integrate_profile(literal, initial_eta=0.0)
    assert np.max(np.abs(prof.eta)) > 1e-6


def test_standard_scenario_wave_train(scenario, water):
    prof = integrate_profile(scenario)
    ref = prof.reference
    # friction-dominated: the profile is the feeding train below the floor,
    # deviation growing toward the leading edge at z_f
    assert prof.monotone_increasing
    assert prof.termination == "train_length"
    assert prof.z[-1] == scenario.column.z_f
    assert prof.z[0] == pytest.approx(scenario.column.z_f - scenario.effective_train_length)
    q0f = equilibrium_strain(scenario.column.z_f, water)
    assert prof.eta[-1] == scenario.q_ref - q0f
    assert abs(prof.w[-1] - ref.w_ref) <= 1e-9 * ref.w_ref
    assert np.all(prof.w > 0.0)
    assert np.all(np.diff(prof.eta) >= 0.0)
    # grid spacing honors grid_step
    steps = np.diff(prof.z)
    assert np.all(steps <= scenario.grid_step + 1e-9)


def test_low_friction_profile_decreases(column):
    sc = Scenario(column=column, q_ref=1.1296, k=0.05)
    prof = integrate_profile(sc)
    assert not prof.monotone_increasing
    assert prof.z[0] == column.z_f and prof.z[-1] == 0.0
    assert prof.eta[0] > prof.eta[-1] > 0.0


def test_friction_sweep_admissibility(column):
    flags = {}
    for k in [0.05, 0.15, 0.5, 1.0, 2.0, 5.0, 10.0]:
        prof = integrate_profile(Scenario(column=column, q_ref=1.1296, k=k))
        flags[k] = prof.monotone_increasing
    assert flags == {0.05: False, 0.15: True, 0.5: True, 1.0: True,
                     2.0: True, 5.0: True, 10.0: True}


def test_near_equilibrium_forcing_stays_small(column, water):
    q0f = equilibrium_strain(column.z_f, water)
    sc = Scenario(column=column, q_ref=q0f + 1e-12, k=1.0)
    prof = integrate_profile(sc)
    assert prof.z[0] == column.z_f and prof.z[-1] == 0.0
    assert np.all(prof.eta >= 0.0)
    assert np.all(prof.eta <= 1e-10)


def test_linkage_m_equals_A_eta(scenario):
    prof = integrate_profile(scenario)
    m = prof.q * prof.w
    target = prof.reference.A * prof.eta
    scale = np.maximum(np.abs(target), 1e-30)
    assert np.max(np.abs(m - target) / scale) <= 1e-10


def test_friction_dominance_along_train(scenario):
    prof = integrate_profile(scenario)
    ref = prof.reference
    src = np.array([profile_source(z, e, scenario, ref)
                    for z, e in zip(prof.z, prof.eta)])
    assert np.all(src >= -1e-9)


def test_march_fourth_order(scenario):
    # halving the step of the underlying march shrinks the error ~16x
    ref = reference_state(scenario)
    q0f = equilibrium_strain(scenario.column.z_f, scenario.column.params)
    eta0 = scenario.q_ref - q0f
    runs = {n: _march_inverted(scenario, ref, eta0, n) for n in (200, 400, 800)}
    shared = min(runs[200][2], runs[400][2] // 2, runs[800][2] // 4)
    assert shared > 50
    z200 = runs[200][1][:shared + 1]
    z400 = runs[400][1][:2 * shared + 1:2]
    z800 = runs[800][1][:4 * shared + 1:4]
    e_coarse = np.max(np.abs(z200 - z400))
    e_fine = np.max(np.abs(z400 - z800))
    ratio = e_coarse / e_fine
    assert 16.0 * 0.7 <= ratio <= 16.0 * 1.3, f"observed order ratio {ratio:.2f}"


def test_grid_step_halving(column):
    coarse = integrate_profile(Scenario(column=column, q_ref=1.1296, k=1.0, grid_step=2.0))
    fine = integrate_profile(Scenario(column=column, q_ref=1.1296, k=1.0, grid_step=1.0))
    common = np.intersect1d(np.round(coarse.z, 9), np.round(fine.z, 9))
    assert len(common) > 1000
    eta_c = np.interp(common, coarse.z, coarse.eta)
    eta_f = np.interp(common, fine.z, fine.eta)
    assert np.max(np.abs(eta_c - eta_f)) <= 1e-8 * 3700.0


def test_deterministic(scenario):
    a = integrate_profile(scenario)
    b = integrate_profile(scenario)
    assert np.array_equal(a.z, b.z) and np.array_equal(a.eta, b.eta)


def test_train_length_override(column):
    sc = Scenario(column=column, q_ref=1.1296, k=1.0, train_length=500.0)
    prof = integrate_profile(sc)
    assert prof.z[0] == pytest.approx(column.z_f - 500.0)


def test_profile_fields_consistent(scenario, water):
    prof = integrate_profile(scenario)
    assert np.allclose(prof.q, prof.q0 + prof.eta, rtol=0, atol=1e-15)
    assert np.allclose(prof.q0, equilibrium_strain(prof.z, water), rtol=1e-15)
    assert np.all(np.diff(prof.z) > 0.0)

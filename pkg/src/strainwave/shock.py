"""Front-shock speed and trajectory.

The front shock joins the resting column ahead (q0(z), w = 0) to a state on
the strain wave behind, whose velocity follows the linkage
w = A*(1 - q0/q).  Its speed is the Rankine-Hugoniot value of the
conservative system, and it always lies strictly between the local resting
sound speed c(q0(z)) and the wave speed A, so the shock lags the advected
strain wave and samples ever smaller deviations: the front erodes as it
climbs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .equilibrium import equilibrium_strain
from .errors import DegenerateStatesError
from .profile import ReferenceState, Scenario, WaveProfile, _rk4
from .statelaws import MaterialParams, sound_speed_q, strain_pressure

# A shock is considered eroded away once its strain jump drops below this
# fraction of the initial forcing amplitude.
AMPLITUDE_DEATH_FRACTION = 1e-6


@dataclass(frozen=True)
class ShockPath:
    """Tracked front-shock trajectory with its speed bounds per sample."""

    t: np.ndarray
    z: np.ndarray
    q_s: np.ndarray
    speed: np.ndarray
    lower_bound: np.ndarray
    upper_bound: np.ndarray
    exhausted: bool
    reached_surface: bool
    arrival_time: float | None
    reference: ReferenceState


@dataclass(frozen=True)
class CompositeWave:
    """The advected strain wave split by the shock position at one time."""

    t: float
    shock_position: float
    kept_z: np.ndarray
    kept_q: np.ndarray
    eliminated_z: np.ndarray
    eliminated_q: np.ndarray


def rh_speed(q_left, w_left, q_right, w_right, params: MaterialParams):
    """Rankine-Hugoniot speed joining two states of the (q, m) system.

    speed = (w1 + w2)/2 + (q1 + q2)/2 * sqrt((P(q2) - P(q1))/((q2 - q1) q1 q2)),
    symmetric in the two states.  States closer than 1e-14 in strain are
    rejected; use rh_speed_limit for the equal-state (characteristic) limit.
    """
    if q_left <= 0.0 or q_right <= 0.0:
        raise ValueError("strain states must be positive")
    if abs(q_left - q_right) < 1e-14:
        raise DegenerateStatesError(
            "states are numerically equal; use rh_speed_limit instead")
    jump = (strain_pressure(q_right, params) - strain_pressure(q_left, params)) \
        / (q_right - q_left)
    return 0.5 * (w_left + w_right) + 0.5 * (q_left + q_right) * np.sqrt(
        jump / (q_left * q_right))


def rh_speed_limit(q, w, params: MaterialParams):
    """Equal-state limit of rh_speed: the characteristic speed w + c(q)."""
    return w + sound_speed_q(q, params)


def mean_value_point(q_a, q_b, params: MaterialParams) -> float:
    """The xi in (q_a, q_b) where P'(xi) equals the secant slope of P.

    P' is strictly increasing, so xi is unique; located by root bracketing.
    """
    lo, hi = min(q_a, q_b), max(q_a, q_b)
    if not hi > lo:
        raise ValueError("states must be distinct")
    secant = (strain_pressure(hi, params) - strain_pressure(lo, params)) / (hi - lo)

    def resid(xi):
        return sound_speed_q(xi, params) ** 2 - secant

    return brentq(resid, lo, hi, xtol=1e-15, rtol=8.9e-16)


def track_shock(profile: WaveProfile, scenario: Scenario, t_max: float,
                time_step: float | None = None) -> ShockPath:
    """Integrate the shock position fed by the advected strain wave.

    The deviation profile is advected rigidly at speed A, so the left state
    at time t is q_s = q0(z) + eta_p(z - A t) with eta_p the profile in its
    initial frame; the right state is the resting column.  Starts at the
    floor with the full forcing amplitude and stops at the surface, at
    t_max, or when the shock has either consumed the whole sampled train or
    eroded below AMPLITUDE_DEATH_FRACTION of the initial amplitude (both
    reported as ``exhausted``).
    """
    if t_max <= 0.0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if not profile.monotone_increasing:
        raise ValueError("profile is not admissible (deviation decreasing "
                         "toward the leading edge)")
    params = scenario.column.params
    A = profile.reference.A
    z_f = scenario.column.z_f
    eta_p = profile.deviation_interpolator()
    xi_lo, xi_hi = float(profile.z[0]), float(profile.z[-1])
    amp0 = float(np.max(profile.eta))
    amp_floor = AMPLITUDE_DEATH_FRACTION * amp0
    dt = time_step if time_step is not None else scenario.grid_step / A
    if dt <= 0.0:
        raise ValueError("time step must be positive")

    def left_state(t, z):
        xi = min(max(z - A * t, xi_lo), xi_hi)
        return equilibrium_strain(z, params) + float(eta_p(xi))

    def rhs(t, z):
        q_s = left_state(t, z)
        q_b = equilibrium_strain(z, params)
        return rh_speed(q_s, A * (1.0 - q_b / q_s), q_b, 0.0, params)

    def record(t, z):
        q_b = equilibrium_strain(z, params)
        q_s = left_state(t, z)
        ts.append(t)
        zs.append(z)
        qss.append(q_s)
        speeds.append(rh_speed(q_s, A * (1.0 - q_b / q_s), q_b, 0.0, params))

    ts, zs, qss, speeds = [], [], [], []
    t, z = 0.0, z_f
    record(t, z)
    exhausted = False
    reached_surface = False
    arrival_time = None
    n_max = int(np.ceil(t_max / dt)) + 1
    for _ in range(n_max):
        if t >= t_max:
            break
        h = min(dt, t_max - t)
        z_next = _rk4(rhs, t, z, h)
        if z_next >= 0.0:
            # land exactly on the surface
            def overshoot(frac):
                return _rk4(rhs, t, z, frac * h)
            frac = brentq(overshoot, 0.0, 1.0, xtol=1e-15, rtol=8.9e-16)
            t = t + frac * h
            z = 0.0
            record(t, z)
            reached_surface = True
            arrival_time = t
            break
        t, z = t + h, z_next
        if z - A * t < xi_lo:
            exhausted = True  # train fully consumed
            break
        record(t, z)
        if qss[-1] - equilibrium_strain(z, params) < amp_floor:
            exhausted = True
            break

    return ShockPath(t=np.asarray(ts), z=np.asarray(zs), q_s=np.asarray(qss),
                     speed=np.asarray(speeds),
                     lower_bound=sound_speed_q(equilibrium_strain(np.asarray(zs), params), params),
                     upper_bound=np.full(len(ts), A),
                     exhausted=exhausted, reached_surface=reached_surface,
                     arrival_time=arrival_time, reference=profile.reference)


def composite_wave(profile: WaveProfile, shock_path: ShockPath, t: float) -> CompositeWave:
    """Split the advected strain wave at the shock position at time t.

    Samples behind the shock (z <= z(t)) are the real, kept part of the
    wave; samples ahead of it are the hypothetical continuation the slower
    shock has cut off.  The kept part's top sample sits exactly at the
    shock with value q_s(t).
    """
    if not (shock_path.t[0] <= t <= shock_path.t[-1]):
        raise ValueError(
            f"t={t} outside the tracked span [{shock_path.t[0]}, {shock_path.t[-1]}]")
    params = profile.column.params
    A = profile.reference.A
    z_t = float(np.interp(t, shock_path.t, shock_path.z))
    positions = profile.z + A * t
    q_vals = equilibrium_strain(positions, params) + profile.eta
    behind = positions <= z_t
    kept_z = positions[behind]
    kept_q = q_vals[behind]
    # exact sample at the shock
    eta_interp = profile.deviation_interpolator()
    xi = min(max(z_t - A * t, float(profile.z[0])), float(profile.z[-1]))
    q_s = equilibrium_strain(z_t, params) + float(eta_interp(xi))
    if len(kept_z) == 0 or kept_z[-1] < z_t:
        kept_z = np.concatenate((kept_z, [z_t]))
        kept_q = np.concatenate((kept_q, [q_s]))
    else:
        kept_q[-1] = q_s
    return CompositeWave(t=t, shock_position=z_t,
                         kept_z=kept_z, kept_q=kept_q,
                         eliminated_z=positions[~behind],
                         eliminated_q=q_vals[~behind])

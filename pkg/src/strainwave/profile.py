"""Strain-wave profile fed by a pressure forcing at the ocean floor.

The forcing fixes a reference state (q_ref at z_f) whose wave velocity is
A = w_ref + c_ref.  Writing the deviation eta = q - q0(z) and the linkage
m = A*eta, the momentum balance collapses to a first-order ODE for eta(z),

    (q^2 c^2 - q0^2 A^2) * eta_z + S(z, eta) = 0,

whose source S collects a (negative) gravity term and (positive) coupling
and friction terms, both proportional to (q - q0)^2 in the default
"corrected" form.  The "literal" form keeps the coupling term constant,
which moves the rest state off equilibrium; it is retained for comparison.

The reference coupling makes the starting point exactly sonic: at
(z_f, eta_ref) the leading coefficient vanishes identically, so eta(z)
leaves the floor with a vertical tangent and the equation cannot be marched
in z from there.  Swapping variables fixes this: dz/deta = -D/S is smooth
at the start, and the sign of S decides the geometry.  Friction-dominated
sources (S > 0, roughly k > 0.11 for the standard scenario) continue
*downward* as a wave train whose amplitude decays with depth; this train,
advected upward at speed A, is what feeds and erodes the front shock.
Gravity-dominated sources (small k) continue *upward* as a profile whose
amplitude decays toward the surface, the non-admissible "decreasing"
regime.  The admissibility flag records whether the deviation grows toward
the leading (upper) edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .equilibrium import Column, equilibrium_strain
from .errors import SimulationError, SonicSingularityError
from .statelaws import pressure_of_strain, sound_speed_q

# |D| below this fraction of q0^2 A^2 counts as sonic in profile_rhs.
SONIC_GUARD = 1e-9
# |S| below this fraction of the linear gravity scale g*(gamma0-2)*q0^2*eta0
# stalls the inverted march: the source balance surface has been reached and
# the train continues at essentially constant amplitude.
SOURCE_STALL_FRACTION = 1e-8
# The inverted march stops once eta has dropped to this fraction of its
# starting value; below that the wave has merged with the equilibrium.
ETA_FLOOR_FRACTION = 1e-9

_FORMS = ("corrected", "literal")


@dataclass(frozen=True)
class ReferenceState:
    """Bottom forcing state: wave speed A = w_ref + c_ref."""

    A: float
    w_ref: float
    c_ref: float


@dataclass(frozen=True)
class Scenario:
    """One simulation case: column, forcing, friction and solver settings."""

    column: Column
    q_ref: float
    k: float = 1.0
    grid_step: float = 1.0
    ode_tolerance: float = 1.0e-8
    form: str = "corrected"
    train_length: float | None = None

    def __post_init__(self):
        q0f = equilibrium_strain(self.column.z_f, self.column.params)
        if not self.q_ref > q0f:
            raise ValueError(
                f"q_ref must exceed the resting strain at the floor "
                f"({q0f:.9g}), got {self.q_ref}")
        if self.k < 0.0:
            raise ValueError(f"k must satisfy k >= 0, got {self.k}")
        if self.grid_step <= 0.0:
            raise ValueError(f"grid_step must be positive, got {self.grid_step}")
        if self.ode_tolerance <= 0.0:
            raise ValueError(f"ode_tolerance must be positive, got {self.ode_tolerance}")
        if self.form not in _FORMS:
            raise ValueError(f"form must be one of {_FORMS}, got {self.form!r}")
        if self.train_length is not None and self.train_length <= 0.0:
            raise ValueError(f"train_length must be positive, got {self.train_length}")

    @property
    def effective_train_length(self) -> float:
        return self.train_length if self.train_length is not None else 2.0 * self.column.depth


@dataclass(frozen=True)
class WaveProfile:
    """Sampled deviation profile on an ascending elevation grid.

    For friction-dominated scenarios the samples cover the feeding wave
    train [z_f - L, z_f] in its initial frame (the leading edge sits at the
    floor); otherwise they cover [z_f, z_top <= 0].
    """

    z: np.ndarray
    q0: np.ndarray
    eta: np.ndarray
    q: np.ndarray
    w: np.ndarray
    p: np.ndarray
    reference: ReferenceState
    column: Column
    monotone_increasing: bool
    termination: str = "surface"

    @property
    def leading_edge_z(self) -> float:
        return float(self.z[-1])

    def deviation_interpolator(self) -> PchipInterpolator:
        """Monotone piecewise-cubic interpolant of eta over z."""
        return PchipInterpolator(self.z, self.eta, extrapolate=False)


def reference_state(scenario: Scenario) -> ReferenceState:
    """Reference wave speed and fluid velocity from the floor forcing.

    A = c_ref*q_ref/q0(z_f) and w_ref = c_ref*(q_ref/q0(z_f) - 1), which is
    the unique pair with A = w_ref + c_ref under the linkage m = A*eta.
    """
    params = scenario.column.params
    q0f = equilibrium_strain(scenario.column.z_f, params)
    c_ref = float(sound_speed_q(scenario.q_ref, params))
    A = c_ref * scenario.q_ref / q0f
    w_ref = c_ref * (scenario.q_ref / q0f - 1.0)
    return ReferenceState(A=A, w_ref=w_ref, c_ref=c_ref)


def _coefficient(z, eta, A, params):
    """Leading coefficient D = q^2 c(q)^2 - q0^2 A^2 of the profile ODE."""
    q0v = equilibrium_strain(z, params)
    q = q0v + eta
    return q * q * sound_speed_q(q, params) ** 2 - q0v * q0v * A * A


def _source(z, eta, A, k, params, form):
    """Net source of the profile ODE (gravity + coupling + friction)."""
    q0v = equilibrium_strain(z, params)
    q = q0v + eta
    exponent = 2.0 * params.c0 / params.alpha0 - 1.0
    gravity = params.g * q ** 3 * (1.0 - (q / q0v) ** exponent)
    coupling = params.g * A * A * q0v / sound_speed_q(q0v, params) ** 2
    if form == "corrected":
        coupling = coupling * (q - q0v) ** 2
    friction = (k * q * A * A / params.rho0) * (q - q0v) ** 2
    return gravity + coupling + friction


def profile_source(z, eta, scenario: Scenario, reference: ReferenceState | None = None):
    """Net source term at (z, eta); negative values mean gravity dominates."""
    ref = reference if reference is not None else reference_state(scenario)
    return _source(z, eta, ref.A, scenario.k, scenario.column.params, scenario.form)


def profile_rhs(z, eta, scenario: Scenario, reference: ReferenceState | None = None):
    """Slope eta_z = -S/D of the profile ODE at a regular point.

    Raises SonicSingularityError when |D| is below SONIC_GUARD relative to
    q0^2 A^2; in particular the exact starting point (z_f, q_ref - q0(z_f))
    is always sonic because the reference coupling puts it on the sonic
    locus, and the slope there is infinite.
    """
    ref = reference if reference is not None else reference_state(scenario)
    params = scenario.column.params
    q0v = equilibrium_strain(z, params)
    q = q0v + eta
    if np.any(q <= 0.0):
        raise ValueError("total strain q0 + eta must stay positive")
    D = _coefficient(z, eta, ref.A, params)
    scale = q0v * q0v * ref.A * ref.A
    if np.any(np.abs(D) < SONIC_GUARD * scale):
        raise SonicSingularityError(
            f"profile equation is sonic at z={z}, eta={eta}: |D|={np.max(np.abs(D)):.3e}")
    S = _source(z, eta, ref.A, scenario.k, params, scenario.form)
    return -S / D


def _rk4(f, x, y, h, k1=None):
    if k1 is None:
        k1 = f(x, y)
    k2 = f(x + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(x + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(x + h, y + h * k3)
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _cut_step(f, x, y, h, target):
    """Step fraction in (0, 1] at which the RK4 update crosses target.

    The dependent value at the cut is the target itself (snapped exactly).
    """
    def overshoot(frac):
        return _rk4(f, x, y, frac * h) - target
    frac = brentq(overshoot, 0.0, 1.0, xtol=1e-15, rtol=8.9e-16)
    return frac * h, target


def _stall_floor(eta0: float, q0f: float, params) -> float:
    """Source magnitude below which the march counts as stalled."""
    gravity_scale = params.g * (params.gamma0 - 2.0) * q0f ** 2 * abs(eta0)
    return SOURCE_STALL_FRACTION * max(gravity_scale, 1e-300)


def _march_inverted(scenario: Scenario, ref: ReferenceState, eta0: float, n: int):
    """March dz/deta = -D/S with n fixed steps of eta, descending from eta0.

    Returns (etas, zs, n_regular, termination): the visited nodes, how many
    full uniform steps ran before any event cut, and why the march ended
    ("eta_floor", "surface", "train_length", "stalled").
    """
    params = scenario.column.params
    A, k, form = ref.A, scenario.k, scenario.form
    z_f = scenario.column.z_f
    z_low = z_f - scenario.effective_train_length
    q0f = equilibrium_strain(z_f, params)
    # deviations below ~64 ulp of q0 are invisible to q = q0 + eta and would
    # zero the source; never march below that
    eta_floor = max(eta0 * ETA_FLOOR_FRACTION, 64.0 * np.finfo(float).eps * q0f)
    span_limit = 4.0 * (scenario.effective_train_length + scenario.column.depth)
    stall = _stall_floor(eta0, q0f, params)

    def f(eta, z):
        return -_coefficient(z, eta, A, params) / _source(z, eta, A, k, params, form)

    if eta0 <= eta_floor:
        return np.asarray([eta0]), np.asarray([z_f]), 0, "eta_floor"
    h = -(eta0 - eta_floor) / n
    eta, z = eta0, z_f
    etas, zs = [eta], [z]
    n_regular = 0
    termination = "eta_floor"
    for _ in range(n):
        if abs(_source(z, eta, A, k, params, form)) < stall:
            termination = "stalled"
            break
        slope = f(eta, z)
        if abs(slope * h) > span_limit:
            # approaching the source-balance surface: one more step would
            # overshoot the whole domain
            termination = "stalled"
            break
        z_next = _rk4(f, eta, z, h, k1=slope)
        if z_next > 0.0:
            h_cut, z_cut = _cut_step(f, eta, z, h, 0.0)
            etas.append(eta + h_cut)
            zs.append(z_cut)
            termination = "surface"
            break
        if z_next < z_low:
            h_cut, z_cut = _cut_step(f, eta, z, h, z_low)
            etas.append(eta + h_cut)
            zs.append(z_cut)
            termination = "train_length"
            break
        eta += h
        z = z_next
        etas.append(eta)
        zs.append(z)
        n_regular += 1
    return np.asarray(etas), np.asarray(zs), n_regular, termination


def _march_in_z(scenario: Scenario, ref: ReferenceState, eta0: float, n: int):
    """March eta_z = -S/D upward from (z_f, eta0) with n fixed steps in z.

    Only valid off the sonic locus; used for prescribed starting deviations
    (comparisons and the resting-column check).  Raises SonicSingularityError
    if the march reaches the sonic locus.
    """
    params = scenario.column.params
    A, k, form = ref.A, scenario.k, scenario.form
    z_f = scenario.column.z_f

    def f(z, eta):
        D = _coefficient(z, eta, A, params)
        scale = equilibrium_strain(z, params) ** 2 * A * A
        if abs(D) < SONIC_GUARD * scale:
            raise SonicSingularityError(f"sonic locus reached at z={z:.3f}")
        return -_source(z, eta, A, k, params, form) / D

    h = (0.0 - z_f) / n
    z, eta = z_f, eta0
    zs, etas = [z], [eta]
    n_regular = 0
    termination = "surface"
    for _ in range(n):
        eta_next = _rk4(f, z, eta, h)
        if eta0 > 0.0 and eta_next <= 0.0:
            h_cut, eta_cut = _cut_step(f, z, eta, h, 0.0)
            zs.append(z + h_cut)
            etas.append(eta_cut)
            termination = "eta_zero"
            break
        z += h
        eta = eta_next
        zs.append(z)
        etas.append(eta)
        n_regular += 1
    return np.asarray(zs), np.asarray(etas), n_regular, termination


def _converge(march, tol_abs, n0=256, n_max=16384):
    """Step-halve a fixed-step march until two refinements agree.

    ``march(n)`` must return (x_nodes, y_nodes, n_regular, termination) with
    uniform x steps; agreement is measured on y at the shared x nodes.
    """
    coarse = march(n0)
    n = n0
    while n <= n_max:
        fine = march(2 * n)
        shared = min(coarse[2], fine[2] // 2)
        if shared > 0:
            err = float(np.max(np.abs(coarse[1][:shared + 1] - fine[1][:2 * shared + 1:2])))
        else:
            err = 0.0
        if err <= tol_abs:
            return fine
        coarse, n = fine, 2 * n
    raise SimulationError(
        f"profile integration did not converge to {tol_abs:.3e} within {n_max} steps")


def _resample(z_nodes, eta_nodes, anchor_z, anchor_eta, grid_step):
    """Sample (z, eta) onto a uniform grid anchored at the forcing point."""
    keep = np.concatenate(([True], np.diff(z_nodes) > 0.0))
    z_nodes, eta_nodes = z_nodes[keep], eta_nodes[keep]
    if len(z_nodes) < 2:
        return np.asarray([anchor_z]), np.asarray([anchor_eta])
    interp = PchipInterpolator(z_nodes, eta_nodes, extrapolate=False)
    z_lo, z_hi = float(z_nodes[0]), float(z_nodes[-1])
    n_below = int(np.floor((anchor_z - z_lo) / grid_step + 1e-9))
    n_above = int(np.floor((z_hi - anchor_z) / grid_step + 1e-9))
    grid = anchor_z + grid_step * np.arange(-n_below, n_above + 1, dtype=float)
    if grid[0] > z_lo + 1e-9 * grid_step:
        grid = np.concatenate(([z_lo], grid))
    else:
        grid[0] = z_lo
    if grid[-1] < z_hi - 1e-9 * grid_step:
        grid = np.concatenate((grid, [z_hi]))
    else:
        grid[-1] = z_hi
    eta = np.asarray(interp(np.clip(grid, z_lo, z_hi)))
    i_anchor = int(np.argmin(np.abs(grid - anchor_z)))
    grid[i_anchor] = anchor_z
    eta[i_anchor] = anchor_eta
    return grid, eta


def _truncate_at_fold(x_nodes, y_nodes):
    """Cut a marched branch at the first reversal of the y direction."""
    dy = np.diff(y_nodes)
    moving = np.nonzero(dy != 0.0)[0]
    if len(moving) == 0:
        return x_nodes, y_nodes
    sign0 = np.sign(dy[moving[0]])
    flips = np.nonzero(np.sign(dy) == -sign0)[0]
    if len(flips) == 0:
        return x_nodes, y_nodes
    stop = flips[0] + 1
    return x_nodes[:stop], y_nodes[:stop]


def integrate_profile(scenario: Scenario, initial_eta: float | None = None) -> WaveProfile:
    """Integrate the profile ODE from the floor forcing.

    With the default start eta(z_f) = q_ref - q0(z_f) the starting point is
    sonic and the march runs in the deviation variable; the source sign
    selects the branch (wave train below the floor, or decaying profile up
    the column).  A prescribed ``initial_eta`` off the sonic locus is
    marched in z instead (eta = 0 reproduces the resting column exactly in
    the corrected form).
    """
    ref = reference_state(scenario)
    params = scenario.column.params
    z_f = scenario.column.z_f
    q0f = equilibrium_strain(z_f, params)
    eta0 = scenario.q_ref - q0f if initial_eta is None else float(initial_eta)
    tol_abs = scenario.ode_tolerance * max(scenario.column.depth, 1.0)

    scale = q0f * q0f * ref.A * ref.A
    start_sonic = abs(_coefficient(z_f, eta0, ref.A, params)) < SONIC_GUARD * scale

    if start_sonic:
        S0 = _source(z_f, eta0, ref.A, scenario.k, params, scenario.form)
        if abs(S0) < _stall_floor(eta0, q0f, params):
            raise SonicSingularityError(
                "source and coefficient vanish together at the forcing point; "
                "the continuation direction is undetermined")
        etas, zs, _, termination = _converge(
            lambda n: _march_inverted(scenario, ref, eta0, n), tol_abs)
        etas, zs = _truncate_at_fold(etas, zs)
        if termination == "eta_floor" and z_f <= zs[-1] < 0.0:
            # deviation merged with the equilibrium before the surface:
            # continue the resting branch up the column
            zs = np.concatenate((zs, [0.0]))
            etas = np.concatenate((etas, [etas[-1]]))
            termination = "surface"
        order = np.argsort(zs, kind="stable")
        grid, eta = _resample(zs[order], etas[order], z_f, eta0, scenario.grid_step)
    else:
        # tolerance is on the deviation when marching in z
        tol_abs = scenario.ode_tolerance * max(abs(eta0), 1.0)
        n0 = max(64, int(np.ceil(scenario.column.depth / scenario.grid_step / 4.0)))
        zs, etas, _, termination = _converge(
            lambda n: _march_in_z(scenario, ref, eta0, n), tol_abs, n0=n0)
        grid, eta = _resample(zs, etas, z_f, eta0, scenario.grid_step)

    q0_arr = equilibrium_strain(grid, params)
    q = q0_arr + eta
    w = ref.A * (q - q0_arr) / q
    p = pressure_of_strain(q, params)
    mono = bool(np.all(np.diff(eta) >= -1e-12 * max(float(np.max(np.abs(eta))), 1e-300)))
    return WaveProfile(z=grid, q0=q0_arr, eta=eta, q=q, w=w, p=p,
                       reference=ref, column=scenario.column,
                       monotone_increasing=mono, termination=termination)

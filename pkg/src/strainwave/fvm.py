"""First-order finite-volume reference solver for the conservative system

    q_t + (q w)_z = 0
    m_t + (m w + P(q))_z = -g q - (k/rho0) q |w| w,      m = q w.

Rusanov (local Lax-Friedrichs) fluxes with explicit forward-Euler time
stepping: deliberately simple so the scheme is auditable.  Accuracy is
bought with cells, not scheme complexity; the hydrostatic equilibrium is
not rebalanced, so a resting column drifts at first order in the cell
width (measured, not hidden).  Used to cross-validate profile shapes and
Rankine-Hugoniot front speeds.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import FrontFitError, PositivityError
from .profile import Scenario
from .statelaws import MaterialParams, sound_speed_q, strain_pressure

_BOUNDARIES = ("transmissive", "periodic")


@dataclass(frozen=True)
class FvState:
    """Cell-averaged conserved fields on a uniform 1-D grid."""

    q: np.ndarray
    m: np.ndarray
    dz: float
    z_origin: float
    t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "q", np.asarray(self.q, dtype=float))
        object.__setattr__(self, "m", np.asarray(self.m, dtype=float))
        if self.q.size == 0 or self.q.shape != self.m.shape:
            raise ValueError("q and m must be non-empty arrays of equal length")
        if self.dz <= 0.0:
            raise ValueError(f"dz must be positive, got {self.dz}")
        if np.any(self.q <= 0.0):
            raise PositivityError("strain must be positive in every cell")

    @property
    def z_centers(self) -> np.ndarray:
        return self.z_origin + self.dz * (np.arange(self.q.size) + 0.5)

    @property
    def w(self) -> np.ndarray:
        return self.m / self.q


@dataclass(frozen=True)
class RiemannProblem:
    """Piecewise-constant initial data with a single jump."""

    q_left: float
    w_left: float
    q_right: float
    w_right: float


def physical_flux(q, m, params: MaterialParams):
    """Exact flux (m, m^2/q + P(q)) of the conservative system."""
    q = np.asarray(q, dtype=float)
    m = np.asarray(m, dtype=float)
    if np.any(q <= 0.0):
        raise PositivityError("flux evaluation requires positive strain")
    return m, m * m / q + strain_pressure(q, params)


def numerical_flux(left, right, params: MaterialParams):
    """Rusanov interface flux between (q, m) states.

    Central average of the physical fluxes minus 0.5*s_max*(U_R - U_L),
    with s_max the larger of |w| + c(q) over the two states; equal states
    reproduce physical_flux exactly.
    """
    q_l, m_l = left
    q_r, m_r = right
    fq_l, fm_l = physical_flux(q_l, m_l, params)
    fq_r, fm_r = physical_flux(q_r, m_r, params)
    s = np.maximum(np.abs(m_l / q_l) + sound_speed_q(q_l, params),
                   np.abs(m_r / q_r) + sound_speed_q(q_r, params))
    flux_q = 0.5 * (fq_l + fq_r) - 0.5 * s * (np.asarray(q_r) - np.asarray(q_l))
    flux_m = 0.5 * (fm_l + fm_r) - 0.5 * s * (np.asarray(m_r) - np.asarray(m_l))
    return flux_q, flux_m


def max_signal_speed(state: FvState, params: MaterialParams) -> float:
    return float(np.max(np.abs(state.w) + sound_speed_q(state.q, params)))


def step(state: FvState, scenario: Scenario, cfl: float,
         boundary: str = "transmissive", extra_source=None) -> FvState:
    """One explicit update with dt = cfl * dz / max(|w| + c).

    The momentum source is -g q - (k/rho0) q |w| w, evaluated pointwise.
    ``extra_source(z_centers, t) -> (s_q, s_m)`` injects manufactured
    sources for convergence studies.
    """
    if not 0.0 < cfl < 1.0:
        raise ValueError(f"cfl must lie in (0, 1), got {cfl}")
    if boundary not in _BOUNDARIES:
        raise ValueError(f"boundary must be one of {_BOUNDARIES}, got {boundary!r}")
    params = scenario.column.params
    q, m = state.q, state.m
    dt = cfl * state.dz / max_signal_speed(state, params)

    if boundary == "transmissive":
        qe = np.concatenate(([q[0]], q, [q[-1]]))
        me = np.concatenate(([m[0]], m, [m[-1]]))
    else:
        qe = np.concatenate(([q[-1]], q, [q[0]]))
        me = np.concatenate(([m[-1]], m, [m[0]]))

    flux_q, flux_m = numerical_flux((qe[:-1], me[:-1]), (qe[1:], me[1:]), params)
    w = m / q
    source_m = -params.g * q - (scenario.k / params.rho0) * q * np.abs(w) * w
    q_new = q - dt / state.dz * np.diff(flux_q)
    m_new = m - dt / state.dz * np.diff(flux_m) + dt * source_m
    if extra_source is not None:
        s_q, s_m = extra_source(state.z_centers, state.t)
        q_new = q_new + dt * s_q
        m_new = m_new + dt * s_m
    if np.any(q_new <= 0.0):
        raise PositivityError(f"strain positivity lost at t={state.t + dt:.6g}")
    return replace(state, q=q_new, m=m_new, t=state.t + dt)


def evolve(state: FvState, scenario: Scenario, t_final: float, cfl: float = 0.45,
           boundary: str = "transmissive"):
    """Yield the state after each step until t_final is reached."""
    while state.t < t_final:
        state = step(state, scenario, cfl, boundary)
        yield state


def _front_position(q, z_edges, q_ambient):
    """Sub-cell front location: rightmost crossing of the mid level."""
    level = q_ambient + 0.5 * (np.max(q) - q_ambient)
    above = q >= level
    if not above.any() or above.all():
        return None
    idx = np.nonzero(above[:-1] & ~above[1:])[0]
    if len(idx) == 0:
        return None
    i = idx[-1]
    z_lo = 0.5 * (z_edges[i] + z_edges[i + 1])
    z_hi = 0.5 * (z_edges[i + 1] + z_edges[i + 2])
    frac = (q[i] - level) / (q[i] - q[i + 1])
    return z_lo + frac * (z_hi - z_lo)


def measure_front_speed(initial: RiemannProblem, scenario: Scenario, t_final: float,
                        n_cells: int = 4000, domain: tuple[float, float] = (0.0, 12000.0),
                        interface: float | None = None, cfl: float = 0.45,
                        n_snapshots: int = 25) -> float:
    """Front speed of an evolved Riemann problem by least-squares fit.

    The front is located at each snapshot as the rightmost mid-level
    crossing of q (sub-cell interpolated); its trajectory over the final
    two thirds of the run is fitted with a straight line.  Raises
    FrontFitError for non-compressive data or when the front leaves the
    grid.
    """
    if not initial.q_left > initial.q_right:
        raise FrontFitError("no compressive front: need q_left > q_right")
    if t_final <= 0.0:
        raise ValueError(f"t_final must be positive, got {t_final}")
    z_lo, z_hi = domain
    if interface is None:
        interface = z_lo + 0.25 * (z_hi - z_lo)
    z_edges = np.linspace(z_lo, z_hi, n_cells + 1)
    centers = 0.5 * (z_edges[:-1] + z_edges[1:])
    q = np.where(centers < interface, initial.q_left, initial.q_right)
    m = np.where(centers < interface, initial.q_left * initial.w_left,
                 initial.q_right * initial.w_right)
    state = FvState(q=q, m=m, dz=z_edges[1] - z_edges[0], z_origin=z_lo)

    times, positions = [], []
    snap_dt = t_final / n_snapshots
    next_snap = snap_dt
    while state.t < t_final:
        state = step(state, scenario, cfl)
        if state.t >= next_snap or state.t >= t_final:
            pos = _front_position(state.q, z_edges, initial.q_right)
            if pos is None:
                raise FrontFitError("front not locatable on the grid")
            times.append(state.t)
            positions.append(pos)
            next_snap += snap_dt
    if positions and positions[-1] > z_hi - 10.0 * state.dz:
        raise FrontFitError("front reached the downstream boundary; enlarge the domain")
    times = np.asarray(times)
    positions = np.asarray(positions)
    burn = len(times) // 3
    if len(times) - burn < 2:
        raise FrontFitError("not enough snapshots to fit a front speed")
    slope = np.polyfit(times[burn:], positions[burn:], 1)[0]
    return float(slope)

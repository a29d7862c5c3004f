"""Traveling waves of 2x2 hyperbolic systems with a source term.

For a system q_t + m_x = 0, m_t + 2u m_x + (c^2 - u^2) q_x = S(q, m) with a
non-vanishing source, seeking a solution with an affine linkage m = A q - B
reduces the system to psi'(q) q_x = 1 with

    psi'(q) = (c(q, m)^2 - (u(q, m) - A)^2) / S(q, m),   m = A q - B.

(Substituting m_t = -A^2 q_x and m_x = A q_x into the momentum equation
gives q_x * (c^2 - (u - A)^2) = S; the numerator is sometimes quoted with
the opposite sign, which synthesizes waves that miss the momentum balance
by exactly 2S.)

Where psi is strictly monotone it can be inverted locally, giving
q(x, t) = psi^{-1}(x - x0 - A t): a non-constant wave that solves the
nonlinear sourced system and, at the same time, the plain linear transport
system q_t + A q_x = 0, m_t + A m_x = 0.  This module builds such waves by
quadrature and checks both properties by finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import NonMonotoneError, ZeroSourceError

SOURCE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SystemDescription:
    """A 2x2 system via its mean eigenvalue u, half-gap c >= 0 and source S.

    All three callables take (q, m) and must accept numpy arrays.
    """

    u: Callable
    c: Callable
    S: Callable


@dataclass(frozen=True)
class SourceWave:
    """A synthesized traveling wave with linkage m = A q - B.

    ``q_nodes``/``psi_nodes`` tabulate the strictly monotone phase function
    psi on the construction interval; the wave is q(x, t) = psi^{-1}(s)
    with s = x - x0 - A t restricted to the tabulated range of psi.
    """

    A: float
    B: float
    x0: float
    q_nodes: np.ndarray
    psi_nodes: np.ndarray
    _inverse: PchipInterpolator = field(init=False, repr=False, compare=False)
    _forward: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        psi = self.psi_nodes
        order = np.argsort(psi)
        object.__setattr__(self, "_inverse",
                           PchipInterpolator(psi[order], self.q_nodes[order], extrapolate=False))
        object.__setattr__(self, "_forward",
                           PchipInterpolator(self.q_nodes, psi, extrapolate=False))

    @property
    def psi_range(self) -> tuple[float, float]:
        return float(np.min(self.psi_nodes)), float(np.max(self.psi_nodes))

    def psi(self, q):
        return self._forward(q)

    def q_at(self, x, t):
        """Evaluate the wave at positions x and time t."""
        s = np.asarray(x, dtype=float) - self.x0 - self.A * np.asarray(t, dtype=float)
        lo, hi = self.psi_range
        if np.any(s < lo) or np.any(s > hi):
            raise ValueError(
                f"phase {s.min():.6g}..{s.max():.6g} leaves the tabulated range "
                f"[{lo:.6g}, {hi:.6g}]")
        return self._inverse(s)

    def m_at(self, x, t):
        return self.A * self.q_at(x, t) - self.B


@dataclass(frozen=True)
class ResidualReport:
    """Finite-difference residuals of a wave on an (x, t) grid."""

    x: np.ndarray
    t: np.ndarray
    res_q: np.ndarray
    res_m: np.ndarray

    @property
    def max_q(self) -> float:
        return float(np.max(np.abs(self.res_q)))

    @property
    def max_m(self) -> float:
        return float(np.max(np.abs(self.res_m)))

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write("x,t,res_q,res_m\n")
            for row in zip(self.x.ravel(), self.t.ravel(),
                           self.res_q.ravel(), self.res_m.ravel()):
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def psi_prime(q, system: SystemDescription, A: float, B: float,
              source_tolerance: float = SOURCE_TOLERANCE):
    """Phase-function derivative (c^2 - (u - A)^2)/S along m = A q - B."""
    m = A * np.asarray(q, dtype=float) - B
    s = system.S(q, m)
    if np.any(np.abs(s) < source_tolerance):
        raise ZeroSourceError("source term vanishes on the construction interval")
    return (system.c(q, m) ** 2 - (system.u(q, m) - A) ** 2) / s


def build_wave(system: SystemDescription, A: float, B: float,
               q_interval: tuple[float, float], x0: float = 0.0,
               rel_tol: float = 1e-10, n_start: int = 256,
               n_max: int = 1 << 20) -> SourceWave:
    """Tabulate psi by refined trapezoid quadrature and wrap its inverse.

    psi' must keep one sign on the interval (NonMonotoneError otherwise);
    the node count doubles until two refinements of the cumulative
    trapezoid agree within rel_tol of the total variation of psi.
    """
    q_lo, q_hi = q_interval
    if not q_hi > q_lo:
        raise ValueError("q_interval must be non-degenerate and ordered")

    def tabulate(n):
        q = np.linspace(q_lo, q_hi, n + 1)
        deriv = psi_prime(q, system, A, B)
        if np.any(deriv == 0.0) or (np.any(deriv > 0.0) and np.any(deriv < 0.0)):
            raise NonMonotoneError(
                "psi' changes sign on the interval; no monotone phase exists "
                "(the interval contains a sonic point)")
        psi = np.concatenate(([0.0], np.cumsum(0.5 * (deriv[:-1] + deriv[1:]) * np.diff(q))))
        return q, psi

    n = n_start
    q_c, psi_c = tabulate(n)
    while n <= n_max:
        q_f, psi_f = tabulate(2 * n)
        scale = max(float(np.max(np.abs(psi_f))), 1e-300)
        err = float(np.max(np.abs(psi_f[::2] - psi_c))) / scale
        if err <= rel_tol:
            return SourceWave(A=A, B=B, x0=x0, q_nodes=q_f, psi_nodes=psi_f)
        q_c, psi_c, n = q_f, psi_f, 2 * n
    raise NonMonotoneError(f"quadrature did not reach rel_tol={rel_tol} within {n_max} nodes")


def _uniform_spacing(grid, name):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise ValueError(f"{name} must be a 1-D grid with at least 3 points")
    steps = np.diff(grid)
    h = steps[0]
    if h <= 0.0 or np.any(np.abs(steps - h) > 1e-8 * abs(h)):
        raise ValueError(f"{name} must be uniformly spaced and increasing")
    return h


def _grid_residuals(wave_q, wave_m, x_grid, t_grid):
    hx = _uniform_spacing(x_grid, "x_grid")
    ht = _uniform_spacing(t_grid, "t_grid")
    X, T = np.meshgrid(np.asarray(x_grid, float), np.asarray(t_grid, float), indexing="ij")
    Q = wave_q(X, T)
    M = wave_m(X, T)
    dQ_dx = np.gradient(Q, hx, axis=0, edge_order=2)
    dQ_dt = np.gradient(Q, ht, axis=1, edge_order=2)
    dM_dx = np.gradient(M, hx, axis=0, edge_order=2)
    dM_dt = np.gradient(M, ht, axis=1, edge_order=2)
    return X, T, Q, M, dQ_dx, dQ_dt, dM_dx, dM_dt


def verify_transport(wave, x_grid, t_grid) -> ResidualReport:
    """Residuals of the linear transport system q_t + A q_x, m_t + A m_x."""
    X, T, Q, M, qx, qt, mx, mt = _grid_residuals(wave.q_at, wave.m_at, x_grid, t_grid)
    return ResidualReport(x=X, t=T, res_q=qt + wave.A * qx, res_m=mt + wave.A * mx)


def verify_nonlinear(wave, system: SystemDescription, x_grid, t_grid) -> ResidualReport:
    """Residuals of the nonlinear sourced system on the synthesized wave."""
    X, T, Q, M, qx, qt, mx, mt = _grid_residuals(wave.q_at, wave.m_at, x_grid, t_grid)
    u = system.u(Q, M)
    c = system.c(Q, M)
    res_q = qt + mx
    res_m = mt + 2.0 * u * mx + (c * c - u * u) * qx - system.S(Q, M)
    return ResidualReport(x=X, t=T, res_q=res_q, res_m=res_m)

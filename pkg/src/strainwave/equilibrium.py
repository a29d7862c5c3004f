"""Hydrostatic (at-rest) state of the water column.

At rest the strain-pressure gradient balances gravity, which integrates to
the linear pressure profile p0(z) = p_a - rho0*g*z (z is elevation, negative
below the surface) and the equilibrium strain q0(z) = q(p0(z)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statelaws import MaterialParams, sound_speed_q, strain_density


@dataclass(frozen=True)
class Column:
    """A water column with its floor at elevation z_f < 0."""

    z_f: float
    params: MaterialParams

    def __post_init__(self):
        if not self.z_f < 0.0:
            raise ValueError(f"z_f must be negative (below the surface), got {self.z_f}")

    @property
    def depth(self) -> float:
        return -self.z_f


def hydrostatic_pressure(z, params: MaterialParams):
    """Gauge pressure of the resting column at elevation z (no range check)."""
    return params.p_a - params.rho0 * params.g * np.asarray(z, dtype=float)


def equilibrium_strain(z, params: MaterialParams):
    """Equilibrium strain q0(z) = strain_density(p0(z)) (no range check)."""
    return strain_density(hydrostatic_pressure(z, params), params)


def equilibrium_strain_gradient(z, params: MaterialParams):
    """dq0/dz = -g*q0/c(q0)^2 (no range check)."""
    q = equilibrium_strain(z, params)
    return -params.g * q / sound_speed_q(q, params) ** 2


def _check_range(z, column: Column):
    z = np.asarray(z, dtype=float)
    if np.any(z < column.z_f) or np.any(z > 0.0):
        raise ValueError(f"elevation must lie in [{column.z_f}, 0], got {z}")
    return z


def p0(z, column: Column):
    """Resting pressure at elevation z within the column."""
    return hydrostatic_pressure(_check_range(z, column), column.params)


def q0(z, column: Column):
    """Resting strain density at elevation z within the column."""
    return equilibrium_strain(_check_range(z, column), column.params)


def dq0_dz(z, column: Column):
    """Vertical derivative of the resting strain density within the column."""
    return equilibrium_strain_gradient(_check_range(z, column), column.params)

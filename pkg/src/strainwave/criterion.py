"""Wavelength criterion for tsunami formation and the incidence transform.

A surface wave of wavelength lambda can propagate as a shallow-water wave
only if, over one wavelength, the water column is acoustically mixed by at
least N bottom-surface round trips: lambda >= 2 N H sqrt(g H)/c_s.  An
oblique pressure-wave path at incidence phi is equivalent to a vertical one
with gravity g*cos(phi) and a column stretched to z_f/cos(phi).
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .equilibrium import Column
from .profile import Scenario
from .statelaws import MaterialParams


def min_wavelength(H: float, N: int, c_s: float, params: MaterialParams) -> float:
    """Smallest shallow-water-compatible wavelength, 2 N H sqrt(g H)/c_s."""
    if H <= 0.0:
        raise ValueError(f"depth H must be positive, got {H}")
    if N < 0:
        raise ValueError(f"interaction count N must be >= 0, got {N}")
    if c_s <= 0.0:
        raise ValueError(f"sonic speed c_s must be positive, got {c_s}")
    return 2.0 * N * H * np.sqrt(params.g * H) / c_s


def is_tsunami(lambda_candidate: float, H: float, N: int, c_s: float,
               params: MaterialParams) -> bool:
    """True when the candidate wavelength meets the criterion (inclusive)."""
    return lambda_candidate >= min_wavelength(H, N, c_s, params)


def incidence_transform(scenario: Scenario, phi: float) -> Scenario:
    """Scenario equivalent to propagation at incidence angle phi (radians).

    Gravity becomes g*cos(phi) and the floor moves to z_f/cos(phi); the
    forcing q_ref and friction k are untouched.  phi must lie in [0, pi/2).
    """
    if not 0.0 <= phi < np.pi / 2.0:
        raise ValueError(f"incidence angle must lie in [0, pi/2), got {phi}")
    if phi == 0.0:
        return scenario
    cos_phi = float(np.cos(phi))
    params = scenario.column.params
    tilted = MaterialParams(rho0=params.rho0, c0=params.c0, s0=params.s0,
                            g=params.g * cos_phi, p_a=params.p_a)
    column = Column(z_f=scenario.column.z_f / cos_phi, params=tilted)
    return replace(scenario, column=column)

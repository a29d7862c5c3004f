"""Material and state laws for water under shock loading.

The velocity-pressure description rests on the empirical Hugoniot fit
p = rho0*(c0*w + s0*w**2).  Everything else is derived from it: the
pressure-dependent sound speed c(p) = c0*sqrt(1 + beta0*p), the strain
density q(p) = (1 + beta0*p)**(alpha0/(2*c0)) that plays the role of a
conserved density, and the strain pressure P(q) = (c0**2/gamma0)*q**gamma0
that makes the momentum flux conservative.  With gamma0 ~ 8.68 the system
is formally polytropic gas dynamics with an unusually stiff exponent.

Pressures are gauge pressures: p = 0 corresponds to q = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Water constants.  The Hugoniot slope is stored as c0/858 so that the derived
# velocity scale alpha0 = c0/(2*s0) is exactly 429 m/s; the commonly quoted
# slope 1.921 rounds to the same two decimals but would make the derived
# constants disagree with their rounded reference values by ~0.3%.
WATER_RHO0 = 1000.0
WATER_C0 = 1647.0
WATER_S0 = WATER_C0 / 858.0
STANDARD_GRAVITY = 9.8
ATMOSPHERIC_PRESSURE = 1.0e5


@dataclass(frozen=True)
class MaterialParams:
    """Physical constants of the medium plus derived scales.

    Attributes
    ----------
    rho0 : float
        Mass density [kg/m^3].
    c0 : float
        Sound speed at zero gauge pressure [m/s].
    s0 : float
        Dimensionless Hugoniot slope.
    g : float
        Gravity [m/s^2].
    p_a : float
        Atmospheric (surface) pressure [Pa].
    alpha0, beta0, gamma0 : float
        Derived scales, always recomputed from (rho0, c0, s0):
        alpha0 = c0/(2 s0) [m/s], beta0 = 4 s0/(rho0 c0^2) [1/Pa],
        gamma0 = 2 c0/alpha0 + 1.  They satisfy alpha0*beta0*rho0*c0 = 2.
    """

    rho0: float
    c0: float
    s0: float
    g: float = STANDARD_GRAVITY
    p_a: float = ATMOSPHERIC_PRESSURE
    alpha0: float = field(init=False, repr=False)
    beta0: float = field(init=False, repr=False)
    gamma0: float = field(init=False, repr=False)

    def __post_init__(self):
        if self.rho0 <= 0.0:
            raise ValueError(f"rho0 must be positive, got {self.rho0}")
        if self.c0 <= 0.0:
            raise ValueError(f"c0 must be positive, got {self.c0}")
        if self.s0 <= 0.0:
            raise ValueError(f"s0 must be positive, got {self.s0}")
        if self.g < 0.0:
            raise ValueError(f"g must be non-negative, got {self.g}")
        if self.p_a < 0.0:
            raise ValueError(f"p_a must be non-negative, got {self.p_a}")
        object.__setattr__(self, "alpha0", self.c0 / (2.0 * self.s0))
        object.__setattr__(self, "beta0", 4.0 * self.s0 / (self.rho0 * self.c0 ** 2))
        object.__setattr__(self, "gamma0", 2.0 * self.c0 / self.alpha0 + 1.0)


def water_defaults() -> MaterialParams:
    """Water at standard conditions: rho0 = 1000, c0 = 1647, alpha0 = 429."""
    return MaterialParams(rho0=WATER_RHO0, c0=WATER_C0, s0=WATER_S0)


def _check_pressure_domain(p, params: MaterialParams):
    arg = 1.0 + params.beta0 * np.asarray(p, dtype=float)
    if np.any(arg <= 0.0):
        raise ValueError("pressure out of range: 1 + beta0*p must stay positive")
    return arg


def _check_strain_domain(q):
    q = np.asarray(q, dtype=float)
    if np.any(q <= 0.0):
        raise ValueError("strain density must be positive")
    return q


def hugoniot_velocity(p, params: MaterialParams):
    """Particle velocity behind a shock at gauge pressure p.

    Positive branch of the Hugoniot fit solved for w:
    w(p) = alpha0*(sqrt(1 + beta0*p) - 1).  Strictly increasing in p.
    """
    arg = _check_pressure_domain(p, params)
    return params.alpha0 * (np.sqrt(arg) - 1.0)


def sound_speed_p(p, params: MaterialParams):
    """Wave speed as a function of gauge pressure, c(p) = c0*sqrt(1 + beta0*p)."""
    arg = _check_pressure_domain(p, params)
    return params.c0 * np.sqrt(arg)


def strain_density(p, params: MaterialParams):
    """Strain density q(p) = (1 + beta0*p)**(alpha0/(2*c0)), with q(0) = 1."""
    arg = _check_pressure_domain(p, params)
    return arg ** (params.alpha0 / (2.0 * params.c0))


def pressure_of_strain(q, params: MaterialParams):
    """Inverse of strain_density: p(q) = (q**(2*c0/alpha0) - 1)/beta0."""
    q = _check_strain_domain(q)
    return (q ** (2.0 * params.c0 / params.alpha0) - 1.0) / params.beta0


def sound_speed_q(q, params: MaterialParams):
    """Wave speed as a function of strain density, c(q) = c0*q**(c0/alpha0)."""
    q = _check_strain_domain(q)
    return params.c0 * q ** (params.c0 / params.alpha0)


def strain_pressure(q, params: MaterialParams):
    """Strain pressure P(q) = (c0^2/gamma0)*q**gamma0.

    This is the flux potential of the momentum equation; its derivative
    satisfies P'(q) = c(q)^2, so sqrt(P'(q)) recovers sound_speed_q.
    """
    q = _check_strain_domain(q)
    return params.c0 ** 2 / params.gamma0 * q ** params.gamma0

"""One-dimensional simulation of tsunami generation by a seismic pressure
wave climbing the water column: strain-density state laws, hydrostatic
equilibrium, the strain-wave profile with its front shock, a finite-volume
reference solver, source-wave construction, and the wavelength criterion.
"""

from .criterion import incidence_transform, is_tsunami, min_wavelength
from .equilibrium import Column, dq0_dz, p0, q0
from .errors import (ConfigError, DegenerateStatesError, FrontFitError,
                     NonMonotoneError, PositivityError, SimulationError,
                     SonicSingularityError, ZeroSourceError)
from .fvm import (FvState, RiemannProblem, evolve, measure_front_speed,
                  numerical_flux, physical_flux, step)
from .profile import (ReferenceState, Scenario, WaveProfile, integrate_profile,
                      profile_rhs, profile_source, reference_state)
from .shock import (CompositeWave, ShockPath, composite_wave, mean_value_point,
                    rh_speed, rh_speed_limit, track_shock)
from .sourcewave import (ResidualReport, SourceWave, SystemDescription,
                         build_wave, psi_prime, verify_nonlinear,
                         verify_transport)
from .statelaws import (MaterialParams, hugoniot_velocity, pressure_of_strain,
                        sound_speed_p, sound_speed_q, strain_density,
                        strain_pressure, water_defaults)

__version__ = "0.1.0"

__all__ = [
    "Column", "CompositeWave", "ConfigError", "DegenerateStatesError",
    "FrontFitError", "FvState", "MaterialParams", "NonMonotoneError",
    "PositivityError", "ReferenceState", "ResidualReport", "RiemannProblem",
    "Scenario", "ShockPath", "SimulationError", "SonicSingularityError",
    "SourceWave", "SystemDescription", "WaveProfile", "ZeroSourceError",
    "build_wave", "composite_wave", "dq0_dz", "evolve", "hugoniot_velocity",
    "incidence_transform", "integrate_profile", "is_tsunami",
    "mean_value_point", "measure_front_speed", "min_wavelength",
    "numerical_flux", "p0", "physical_flux", "pressure_of_strain",
    "profile_rhs", "profile_source", "psi_prime", "q0", "reference_state",
    "rh_speed", "rh_speed_limit", "sound_speed_p", "sound_speed_q", "step",
    "strain_density", "strain_pressure", "track_shock", "verify_nonlinear",
    "verify_transport", "water_defaults",
]

"""Exception types shared across the solvers."""


class SimulationError(Exception):
    """Base class for numerical failures (as opposed to bad configuration)."""


class SonicSingularityError(SimulationError):
    """The profile equation's leading coefficient crossed zero mid-integration."""


class PositivityError(SimulationError):
    """A strain value dropped to zero or below in the finite-volume solver."""


class NonMonotoneError(SimulationError):
    """A construction that requires a sign-definite integrand found a sign change."""


class ZeroSourceError(SimulationError):
    """The source term vanished where the wave construction needs to divide by it."""


class FrontFitError(SimulationError):
    """No usable front could be located or fitted in a finite-volume run."""


class DegenerateStatesError(ValueError):
    """Two shock states are numerically identical; use the equal-state limit."""


class ConfigError(ValueError):
    """Invalid or unknown configuration input."""

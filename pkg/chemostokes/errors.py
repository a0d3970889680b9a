# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Exception and warning types raised by chemostokes

:description:
    Configuration problems, numerical blow-up, stability refusals and mismatched
    noise/trajectory inputs each get their own type so the CLI can map them to exit codes.

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


class ChemostokesError(Exception):
    """Base class of every chemostokes error."""


class ConfigurationError(ChemostokesError, ValueError):
    """
    Invalid grid, parameter or config file entry.

    :param message: human readable reason
    :param key: offending config key or parameter name, if any
    """
    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class GridMismatchError(ChemostokesError, ValueError):
    """An array or field does not match the grid or basis it is used with."""


class NoiseMismatchError(ChemostokesError, ValueError):
    """A noise path is incompatible with the trajectory or basis it should drive."""


class StabilityError(ChemostokesError):
    """The time step exceeds the explicit porous-medium stability bound."""
    def __init__(self, message, dt=None, bound=None):
        super().__init__(message)
        self.dt = dt
        self.bound = bound


class BlowUpError(ChemostokesError, FloatingPointError):
    """
    NaN or overflow during a time step.

    :param equation: 'n', 'c' or 'u'
    :param step: time step index, filled in by the solver
    """
    def __init__(self, message, equation=None, step=None):
        super().__init__(message)
        self.equation = equation
        self.step = step

    def __str__(self):
        base = super().__str__()
        if self.step is None:
            return base
        return "%s (equation %s, step %d)" % (base, self.equation, self.step)


class NumericalWarning(UserWarning):
    """Non-fatal numerical condition: lost coercivity, divergent noise series, large dt."""

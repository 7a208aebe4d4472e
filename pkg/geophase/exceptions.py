"""
Error kinds raised by the numerical apps.

Management commands map these onto exit codes; library callers catch
GeoPhaseError or one of the subclasses.
"""


class GeoPhaseError(Exception):
    """Base class for every error raised by geophase"""


class InputError(GeoPhaseError):
    """Malformed arguments: arity, dimensions, unknown enum values"""


class ModelParseError(InputError):
    """A model or spec document could not be read or validated"""


class DegeneracyError(GeoPhaseError):
    """The two surfaces are degenerate where a split was required"""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class RepresentationError(GeoPhaseError):
    """An object carries the wrong representation tag"""


class ContourError(GeoPhaseError):
    """A degeneracy lies on (or too close to) an integration contour"""


class UndersampledError(GeoPhaseError):
    """A discretised loop is too coarse to follow the phase"""


class ClosureError(GeoPhaseError):
    """A closed-loop phase is not a multiple of pi within tolerance"""


class SeamError(GeoPhaseError):
    """A regular field part was requested on the seam q = 0"""


class StepError(GeoPhaseError):
    """A finite-difference step crossed a gauge discontinuity"""


class ToleranceError(GeoPhaseError):
    """A quadrature did not reach the requested tolerance"""


class NoLimitError(GeoPhaseError):
    """A b-sequence does not converge monotonically"""


class TableError(GeoPhaseError):
    """One or more flux-table entries missed their target"""

    def __init__(self, message, failing=None):
        super().__init__(message)
        self.failing = failing or []


class RegimeError(GeoPhaseError):
    """The dynamics are not in the adiabatic regime required"""


class StiffnessError(GeoPhaseError):
    """The ODE integrator could not advance"""

"""Exception types raised by the simulation and diagnostics layers."""


class AleflowError(Exception):
    """Base class for all package-specific errors."""


class NonPositiveMetric(AleflowError):
    """a or b is non-positive somewhere on the grid."""


class GridTooCoarse(AleflowError):
    """Fewer nodes than the finite-difference stencil needs."""


class DegenerateGrid(AleflowError):
    """Zero proper spacing between adjacent nodes."""


class BoundaryTooClose(AleflowError):
    """Finite-difference halo of a pointwise operation exits the grid."""


class InterpolationOutOfRange(AleflowError):
    """Requested radius lies outside the tabulated grid."""


class CurvatureBlowUp(AleflowError):
    """sup |Rm| exceeded the configured blow-up threshold."""

    def __init__(self, msg, time=None, sup_rm=None):
        super().__init__(msg)
        self.time = time
        self.sup_rm = sup_rm


class AsymptoticsViolated(AleflowError):
    """Outer-region decay weight |a-1| r^tau grew past 10x its initial value."""

    def __init__(self, msg, time=None):
        super().__init__(msg)
        self.time = time


class StabilityViolated(AleflowError):
    """Requested heat-equation time step exceeds the parabolic limit."""


class MismatchedGrids(AleflowError):
    """Two states expected on the same grid live on different grids."""


class OutsideAsymptoticRegime(AleflowError):
    """Flux radius too small for asymptotic diagnostics."""


class MassIllDefined(AleflowError):
    """tau <= (n-2)/2: the flux-integral mass has no well-defined limit."""


class WrongDimension(AleflowError):
    """Operation only defined in a specific dimension (Hawking mass: n=3)."""


class InsufficientSpan(AleflowError):
    """Decay-fit sample set too small or spanning less than a decade."""


class WindowTooShort(AleflowError):
    """Time-series window has fewer records than the stencil needs."""


class AmplitudeTooLarge(AleflowError):
    """Initial-data amplitude degenerates the metric."""


class UnsupportedDimension(AleflowError):
    """Dimension outside the supported range [3, 6]."""


class ConfigError(AleflowError):
    """Invalid or unparsable experiment configuration."""

"""Exception hierarchy for the reconstruction pipeline."""


class ReconstructionError(ArithmeticError):
    """Base class for numerical failures anywhere in the pipeline."""


class EvaluationAtConductorError(ReconstructionError, ValueError):
    """Field requested at (or within 1e-12 m of) a line current."""


class DegenerateSegmentError(ReconstructionError, ValueError):
    """A contour segment has zero length."""


class SingularSystemError(ReconstructionError):
    """Pivot ratio of a dense solve fell below the singularity threshold."""

    def __init__(self, message, pivot_ratio=0.0):
        super().__init__(message)
        self.pivot_ratio = pivot_ratio


class ClusteredRootsError(ReconstructionError):
    """Two or more polynomial roots (kernel values) are indistinguishable."""


class RootFindingError(ReconstructionError):
    """Neither Aberth iteration nor the companion fallback met the residual bound."""


class KernelDomainError(ReconstructionError, ValueError):
    """A value cannot be mapped back through the harmonic kernel."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value

"""Explicit reconstruction of parallel line currents from magnetic field data on a closed contour."""
from .errors import (ClusteredRootsError, DegenerateSegmentError, EvaluationAtConductorError,
                     KernelDomainError, ReconstructionError, RootFindingError, SingularSystemError)
from .forward import NoiseSpec, add_noise, derive_seed, field_at, sample_circle, sample_contour
from .kernels import backend_name
from .model import (MU0, Conductor, FieldSample, MeasurementSet, MomentVector, Point2, ReconParams,
                    Scenario, ValidationReport, validate_scenario)
from .moments import (HarmonicKernel, contour_moments, exact_moments, extrapolated_moments,
                      kernel_eval, kernel_invert, richardson, segment_moment)
from .prony import (ReconstructionResult, currents_only, reconstruct, roots_of_monic,
                    solve_coefficients, solve_currents)

__version__ = "0.1.0"

__all__ = [
    "MU0", "ClusteredRootsError", "Conductor", "DegenerateSegmentError",
    "EvaluationAtConductorError", "FieldSample", "HarmonicKernel", "KernelDomainError",
    "MeasurementSet", "MomentVector", "NoiseSpec", "Point2", "ReconParams", "ReconstructionError",
    "ReconstructionResult", "RootFindingError", "Scenario", "SingularSystemError",
    "ValidationReport", "add_noise", "backend_name", "contour_moments", "currents_only",
    "derive_seed", "exact_moments", "extrapolated_moments", "field_at", "kernel_eval",
    "kernel_invert", "reconstruct", "richardson", "roots_of_monic", "sample_circle",
    "sample_contour", "segment_moment", "solve_coefficients", "solve_currents",
    "validate_scenario",
]

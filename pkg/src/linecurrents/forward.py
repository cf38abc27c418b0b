"""Forward model: line-current fields, contour sampling and seeded noise."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import EvaluationAtConductorError
from .model import Conductor, MeasurementSet, Point2, Scenario, conductor_arrays

_COINCIDENCE = 1e-12  # metres


def _field(conductors: Sequence[Conductor], px: np.ndarray, py: np.ndarray):
    if not conductors:
        zeros = np.zeros(len(px), dtype=complex)
        return zeros, zeros.copy()
    cx, cy, cur = conductor_arrays(conductors)
    rows = max(1, (1 << 20) // len(cx))
    for start in range(0, len(px), rows):
        d2 = ((px[start:start + rows, None] - cx[None, :]) ** 2
              + (py[start:start + rows, None] - cy[None, :]) ** 2)
        if d2.size and d2.min() < _COINCIDENCE**2:
            k, n = np.unravel_index(np.argmin(d2), d2.shape)
            raise EvaluationAtConductorError(
                f"field evaluated at ({px[start + k]}, {py[start + k]}), on conductor {n}")
    return kernels.field_at_points(px, py, cx, cy, cur)


def field_at(conductors: Sequence[Conductor], r: Point2) -> tuple[complex, complex]:
    """Transverse phasor field (Bx, By) in tesla at ``r``."""
    bx, by = _field(conductors, np.array([r.x]), np.array([r.y]))
    return complex(bx[0]), complex(by[0])


def field_on_points(conductors: Sequence[Conductor], xy) -> tuple[np.ndarray, np.ndarray]:
    xy = np.asarray(xy, dtype=float).reshape(-1, 2)
    return _field(conductors, xy[:, 0], xy[:, 1])


def circle_points(r_meas: float, n_meas: int) -> np.ndarray:
    """n_meas points at angles 2 pi k / n_meas, starting at angle 0, counterclockwise."""
    ang = 2.0 * math.pi * np.arange(n_meas) / n_meas
    return np.column_stack([r_meas * np.cos(ang), r_meas * np.sin(ang)])


def sample_contour(conductors: Sequence[Conductor], xy, r_meas: float | None = None) -> MeasurementSet:
    xy = np.asarray(xy, dtype=float).reshape(-1, 2)
    bx, by = field_on_points(conductors, xy)
    return MeasurementSet(xy, bx, by, r_meas)


def sample_circle(scenario: Scenario, n_meas: int | None = None,
                  include_external: bool = True) -> MeasurementSet:
    """Sample the field of the scenario's conductors on its measurement circle."""
    n = scenario.n_meas if n_meas is None else n_meas
    sources = scenario.conductors if include_external else scenario.internal
    return sample_contour(sources, circle_points(scenario.r_meas, n), scenario.r_meas)


@dataclass(frozen=True)
class NoiseSpec:
    sigma_ref: float
    seed: int = 0

    def __post_init__(self):
        if not self.sigma_ref >= 0:
            raise ValueError(f"sigma_ref must be non-negative, got {self.sigma_ref}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def derive_seed(master: int, run: int) -> int:
    """Per-run 64-bit seed: SeedSequence((master, run)) -> first uint64 word."""
    state = np.random.SeedSequence([int(master), int(run)]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator seeded through SeedSequence(seed)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def mean_field_magnitude(ms: MeasurementSet) -> float:
    """Average over samples of sqrt(|Bx|^2 + |By|^2)."""
    return float(np.mean(np.sqrt(np.abs(ms.bx) ** 2 + np.abs(ms.by) ** 2)))


def add_noise(ms: MeasurementSet, spec: NoiseSpec) -> MeasurementSet:
    """Add zero-mean Gaussian noise to Re/Im of Bx and By at every sample.

    sigma = sigma_ref * mean_field_magnitude(ms).  Deviates are drawn as one
    (n, 4) standard-normal block in column order Re Bx, Im Bx, Re By, Im By.
    """
    if spec.sigma_ref == 0:
        return ms
    sigma = spec.sigma_ref * mean_field_magnitude(ms)
    dev = sigma * make_rng(spec.seed).standard_normal((ms.n_meas, 4))
    bx = ms.bx + (dev[:, 0] + 1j * dev[:, 1])
    by = ms.by + (dev[:, 2] + 1j * dev[:, 3])
    return MeasurementSet(ms.positions, bx, by, ms.r_meas)

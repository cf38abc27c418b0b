"""Harmonic kernel and contour moments b_m.

The kernel is f(x, y) = exp((j x - y) / R), an analytic function of
x + j y.  For line currents inside a closed counterclockwise contour

    b_m = (1/mu0) * closed integral of [j n.B + t.B] f^m dl = sum_n I_n f(r_n)^m

with n = t x z the outward normal.  On a polygon with linearly interpolated
field the discretisation error is O(n_meas^-2), which ``richardson`` removes
to leading order.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import DegenerateSegmentError, KernelDomainError
from .model import MU0, Conductor, MeasurementSet, MomentVector, Point2, conductor_arrays

DEFAULT_QUAD_ORDER = 8


@dataclass(frozen=True)
class HarmonicKernel:
    """f(x, y) = exp((j x - y) / r_scale); invertible on |x| < pi r_scale."""

    r_scale: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.r_scale) and self.r_scale > 0):
            raise ValueError(f"r_scale must be positive, got {self.r_scale}")

    def values(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.exp((1j * x - y) / self.r_scale)


def kernel_eval(k: HarmonicKernel, r: Point2) -> complex:
    return cmath.exp(complex(-r.y, r.x) / k.r_scale)


def kernel_invert(k: HarmonicKernel, f_val: complex) -> Point2:
    """Principal-branch inverse: x = R Im ln f, y = -R Re ln f."""
    f_val = complex(f_val)
    if f_val == 0 or not cmath.isfinite(f_val):
        raise KernelDomainError(f"cannot invert kernel at {f_val!r}", f_val)
    lg = cmath.log(f_val)
    return Point2(k.r_scale * lg.imag, -k.r_scale * lg.real)


def exact_moments(conductors: Sequence[Conductor], k: HarmonicKernel, m_max: int) -> MomentVector:
    """b_m = sum_n I_n f(r_n)^m straight from the sources."""
    if not conductors:
        return MomentVector(np.zeros(m_max + 1, dtype=complex))
    cx, cy, cur = conductor_arrays(conductors)
    f = k.values(cx, cy)
    powers = f[None, :] ** np.arange(m_max + 1)[:, None]
    return MomentVector(powers @ cur)


@lru_cache(maxsize=32)
def gauss_legendre_01(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    x, w = np.polynomial.legendre.leggauss(order)
    nodes, weights = 0.5 * (x + 1.0), 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def segment_moment(r1: Point2, r2: Point2, b1: tuple[complex, complex], b2: tuple[complex, complex],
                   k: HarmonicKernel, m: int, quad_order: int = DEFAULT_QUAD_ORDER) -> complex:
    """Contribution of the straight segment r1 -> r2 to b_m (field linear along it)."""
    dx, dy = r2.x - r1.x, r2.y - r1.y
    length = math.hypot(dx, dy)
    if length == 0.0:
        raise DegenerateSegmentError(f"segment endpoints coincide at ({r1.x}, {r1.y})")
    tx, ty = dx / length, dy / length
    nodes, weights = gauss_legendre_01(quad_order)
    s = 1.0 - nodes
    bx = complex(b1[0]) * s + complex(b2[0]) * nodes
    by = complex(b1[1]) * s + complex(b2[1]) * nodes
    f = k.values(r1.x * s + r2.x * nodes, r1.y * s + r2.y * nodes)
    integrand = (bx * complex(tx, ty) + by * complex(ty, -tx)) * f**m
    return complex(length / MU0 * np.sum(weights * integrand))


def contour_moments(ms: MeasurementSet, k: HarmonicKernel, m_max: int,
                    quad_order: int = DEFAULT_QUAD_ORDER) -> MomentVector:
    """Sum of segment moments over the closed sample polygon, m = 0..m_max."""
    nodes, weights = gauss_legendre_01(quad_order)
    raw = kernels.polygon_moments(ms.positions[:, 0], ms.positions[:, 1], ms.bx, ms.by,
                                  k.r_scale, m_max, nodes, weights)
    return MomentVector(raw / MU0)


def richardson(b_all: MomentVector, b_even: MomentVector, b_odd: MomentVector) -> MomentVector:
    """(8 b_all - b_even - b_odd) / 6, elementwise."""
    if not len(b_all) == len(b_even) == len(b_odd):
        raise ValueError("moment vectors must have equal length")
    return MomentVector((8.0 * b_all.values - b_even.values - b_odd.values) / 6.0)


class MomentSet(NamedTuple):
    all: MomentVector
    even: MomentVector
    odd: MomentVector
    extrapol: MomentVector


def extrapolated_moments(ms: MeasurementSet, k: HarmonicKernel, m_max: int,
                         quad_order: int = DEFAULT_QUAD_ORDER) -> MomentSet:
    """Moments from all samples, the even- and odd-indexed halves, and their extrapolation."""
    if ms.n_meas % 2:
        raise ValueError(f"Richardson split needs an even n_meas, got {ms.n_meas}")
    if ms.n_meas < 6:
        raise ValueError("Richardson split needs at least 6 samples")
    b_all = contour_moments(ms, k, m_max, quad_order)
    b_even = contour_moments(ms.even(), k, m_max, quad_order)
    b_odd = contour_moments(ms.odd(), k, m_max, quad_order)
    return MomentSet(b_all, b_even, b_odd, richardson(b_all, b_even, b_odd))

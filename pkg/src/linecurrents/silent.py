"""Silent (non-radiating) sources and checks that they leave no moment signature.

Two constructions:

* a coaxial volume current J0(rho) with zero net current, whose field
  vanishes outside its support radius;
* a line current inside a circle plus the surface current on the circle
  that cancels its exterior field.  The vector potential inside the disk
  with A0 = 0 on the circle is the line current plus its image at the
  inverse point; the surface density is K0 = (1/mu0) dA0/dn.

Both must give zero contribution to every harmonic-kernel moment.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .forward import field_on_points
from .model import MU0, Conductor, MeasurementSet, Point2, conductor_arrays
from .moments import HarmonicKernel, contour_moments, exact_moments, gauss_legendre_01

Gradient = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]

DEFAULT_TOLERANCE = 1e-8


def harmonic_gradient(k: HarmonicKernel, m: int) -> Gradient:
    """grad G for the moment of order m: f^m (1, j)."""
    def grad(x, y):
        fm = k.values(x, y) ** m
        return fm, 1j * fm
    return grad


def nonharmonic_gradient(x, y):
    """grad(x^3 / 3) = (x^2, 0); x^3 is not harmonic.  Negative control."""
    return np.asarray(x, dtype=float) ** 2 + 0j, np.zeros_like(x, dtype=complex)


@dataclass(frozen=True, eq=False)
class CoaxialProfile:
    """Axisymmetric current density J0(rho) supported on rho <= a0 about ``center``."""

    center: Point2
    a0: float
    j0: Callable[[np.ndarray], np.ndarray]
    check_order: int = 64

    def __post_init__(self):
        if not self.a0 > 0:
            raise ValueError("a0 must be positive")
        net, scale = self.net_current_integral()
        if abs(net) > 1e-12 * max(scale, np.finfo(float).tiny):
            raise ValueError(f"profile carries net current: integral J0 rho drho = {net!r}")

    def net_current_integral(self) -> tuple[complex, float]:
        """(integral of J0 rho drho, integral of |J0| rho drho) over [0, a0]."""
        t, w = gauss_legendre_01(self.check_order)
        rho = self.a0 * t
        vals = np.asarray(self.j0(rho), dtype=complex) * rho * (self.a0 * w)
        return complex(vals.sum()), float(np.abs(vals).sum())


def disk_quadrature(center: Point2, a0: float, n_radial: int = 32, n_angular: int = 64):
    """Nodes (x, y, rho) and area weights: radial Gauss-Legendre x uniform angles."""
    t, w = gauss_legendre_01(n_radial)
    rho = a0 * t
    phi = 2 * math.pi * np.arange(n_angular) / n_angular
    rr, pp = np.meshgrid(rho, phi, indexing="ij")
    weights = np.outer(a0 * w * rho, np.full(n_angular, 2 * math.pi / n_angular))
    x = center.x + rr * np.cos(pp)
    y = center.y + rr * np.sin(pp)
    return x.ravel(), y.ravel(), rr.ravel(), weights.ravel()


def coaxial_moment_contribution(p: CoaxialProfile, k: HarmonicKernel, m: int,
                                gradient: Gradient | None = None,
                                n_radial: int = 32, n_angular: int = 64) -> tuple[complex, complex]:
    """Both components of the area integral of J0 grad G over the profile's disk."""
    grad = gradient if gradient is not None else harmonic_gradient(k, m)
    x, y, rho, w = disk_quadrature(p.center, p.a0, n_radial, n_angular)
    jw = np.asarray(p.j0(rho), dtype=complex) * w
    if not np.any(jw):
        return 0j, 0j
    gx, gy = grad(x, y)
    return complex(np.sum(jw * gx)), complex(np.sum(jw * gy))


def coaxial_scale(p: CoaxialProfile, k: HarmonicKernel, m: int,
                  gradient: Gradient | None = None, n_radial: int = 32, n_angular: int = 64) -> float:
    """Characteristic size: integral |J0| dS times sup |grad G| on the disk."""
    grad = gradient if gradient is not None else harmonic_gradient(k, m)
    x, y, rho, w = disk_quadrature(p.center, p.a0, n_radial, n_angular)
    phi = 2 * math.pi * np.arange(4 * n_angular) / (4 * n_angular)
    x = np.concatenate([x, p.center.x + p.a0 * np.cos(phi)])
    y = np.concatenate([y, p.center.y + p.a0 * np.sin(phi)])
    gx, gy = grad(x, y)
    sup = float(np.max(np.sqrt(np.abs(gx) ** 2 + np.abs(gy) ** 2)))
    return float(np.sum(np.abs(np.asarray(p.j0(rho), dtype=complex)) * w)) * sup


def coaxial_as_conductors(p: CoaxialProfile, n_rings: int = 16, n_per_ring: int = 64) -> list[Conductor]:
    """Concentric rings of line currents carrying the radial-quadrature weights."""
    t, w = gauss_legendre_01(n_rings)
    rho = p.a0 * t
    ring_total = np.asarray(p.j0(rho), dtype=complex) * rho * (p.a0 * w) * 2 * math.pi
    phi = 2 * math.pi * np.arange(n_per_ring) / n_per_ring
    out = []
    for r, total in zip(rho, ring_total):
        for a in phi:
            out.append(Conductor.at(p.center.x + r * math.cos(a), p.center.y + r * math.sin(a),
                                    total / n_per_ring))
    return out


@dataclass(frozen=True, eq=False)
class SurfaceCanceller:
    """Inner line current plus sampled surface density K0 (A/m) on a circle."""

    center: Point2
    a0: float
    inner: Conductor
    angles: np.ndarray
    k0: np.ndarray

    def total_surface_current(self) -> complex:
        """Trapezoid integral of K0 a0 dphi (spectrally accurate on the circle)."""
        return complex(np.sum(self.k0) * self.a0 * 2 * math.pi / len(self.k0))

    def sheet_conductors(self) -> list[Conductor]:
        dl = self.a0 * 2 * math.pi / len(self.k0)
        return [Conductor.at(self.center.x + self.a0 * math.cos(a),
                             self.center.y + self.a0 * math.sin(a), kv * dl)
                for a, kv in zip(self.angles, self.k0)]

    def as_conductors(self) -> list[Conductor]:
        """The inner current and the surface sheet discretised as line currents."""
        return [self.inner] + self.sheet_conductors()


def image_potential_gradient(inner: Conductor, center: Point2, a0: float, x, y):
    """grad A0 for the Dirichlet problem A0 = 0 on the circle (image method)."""
    x = np.asarray(x, dtype=float) - center.x
    y = np.asarray(y, dtype=float) - center.y
    sx, sy = inner.position.x - center.x, inner.position.y - center.y
    coef = MU0 * inner.current / (2 * math.pi)
    dx, dy = x - sx, y - sy
    r2 = dx * dx + dy * dy
    gx = -dx / r2
    gy = -dy / r2
    d2 = sx * sx + sy * sy
    if d2 > 0:  # image at the inverse point; for the centred case it sits at infinity
        ix, iy = sx * a0 * a0 / d2, sy * a0 * a0 / d2
        ex, ey = x - ix, y - iy
        e2 = ex * ex + ey * ey
        gx = gx + ex / e2
        gy = gy + ey / e2
    return coef * gx, coef * gy


def build_canceller(inner: Conductor, center: Point2, a0: float, n_samples: int) -> SurfaceCanceller:
    """Surface density on the circle |r - center| = a0 that silences ``inner`` outside."""
    d = abs(inner.position - center)
    if not d < a0:
        raise ValueError(f"inner conductor at distance {d} is not inside the circle of radius {a0}")
    angles = 2 * math.pi * np.arange(n_samples) / n_samples
    nx, ny = np.cos(angles), np.sin(angles)
    gx, gy = image_potential_gradient(inner, center, a0, center.x + a0 * nx, center.y + a0 * ny)
    k0 = (nx * gx + ny * gy) / MU0
    return SurfaceCanceller(center, a0, inner, angles, k0)


@dataclass(frozen=True)
class SilentRow:
    m: int
    contribution: float
    scale: float
    tolerance: float

    @property
    def relative(self) -> float:
        return self.contribution / self.scale if self.scale > 0 else self.contribution

    @property
    def passed(self) -> bool:
        return self.relative <= self.tolerance


@dataclass
class SilentReport:
    kind: str
    rows: list[SilentRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def max_relative(self) -> float:
        return max((r.relative for r in self.rows), default=0.0)


def _line_scale(conductors: Sequence[Conductor], k: HarmonicKernel, m: int) -> float:
    cx, cy, cur = conductor_arrays(conductors)
    return float(np.sum(np.abs(cur)) * np.max(np.abs(k.values(cx, cy)) ** m) * math.sqrt(2))


SilentSource = Union[CoaxialProfile, SurfaceCanceller, Sequence[Conductor]]


def verify_silent_moments(source: SilentSource, k: HarmonicKernel, m_max: int,
                          tolerance: float = DEFAULT_TOLERANCE,
                          contour_radius: float | None = None,
                          n_contour: int = 720,
                          gradient: Gradient | None = None) -> SilentReport:
    """Moment contributions of a (supposedly) silent source for m = 0..m_max.

    Coaxial profiles are integrated directly over their disk.  Line-current
    scenes (a canceller is discretised into line currents) use the source-side
    sum, or, when ``contour_radius`` is given, the contour moments of their
    field sampled on a circle of that radius about the scene centre.
    """
    if isinstance(source, CoaxialProfile):
        report = SilentReport("coaxial")
        for m in range(m_max + 1):
            cx, cy = coaxial_moment_contribution(source, k, m, gradient)
            scale = coaxial_scale(source, k, m, gradient)
            report.rows.append(SilentRow(m, math.hypot(abs(cx), abs(cy)), scale, tolerance))
        return report
    if isinstance(source, SurfaceCanceller):
        conductors, centre, kind = source.as_conductors(), source.center, "canceller"
    else:
        conductors = list(source)
        cx, cy, _ = conductor_arrays(conductors)
        centre, kind = Point2(float(np.mean(cx)), float(np.mean(cy))), "line-currents"
    if contour_radius is None:
        b = exact_moments(conductors, k, m_max).values
    else:
        phi = 2 * math.pi * np.arange(n_contour) / n_contour
        xy = np.column_stack([centre.x + contour_radius * np.cos(phi),
                              centre.y + contour_radius * np.sin(phi)])
        bx, by = field_on_points(conductors, xy)
        b = contour_moments(MeasurementSet(xy, bx, by), k, m_max).values
    report = SilentReport(kind)
    for m in range(m_max + 1):
        # grad G = f^m (1, j): both components share |b_m|
        report.rows.append(SilentRow(m, abs(b[m]) * math.sqrt(2),
                                     _line_scale(conductors, k, m), tolerance))
    return report

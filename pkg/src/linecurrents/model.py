"""Domain types shared by the forward model, moments and inversion.

Phasors are plain Python ``complex`` values (time dependence ``exp(jwt)``
suppressed).  All quantities are SI: metres, amperes, tesla.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

MU0 = 4e-7 * math.pi


def _check_finite(name: str, *values: complex) -> None:
    for v in values:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError(f"{name} must be finite, got {v!r}")


def as_phasor(value) -> complex:
    """Coerce to ``complex`` and reject NaN/Inf."""
    z = complex(value)
    _check_finite("phasor", z)
    return z


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        _check_finite("Point2", self.x, self.y)

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def __abs__(self) -> float:
        return math.hypot(self.x, self.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Conductor:
    """An infinitely long line current along z at ``position``."""

    position: Point2
    current: complex

    def __post_init__(self):
        if not isinstance(self.position, Point2):
            object.__setattr__(self, "position", Point2(*self.position))
        object.__setattr__(self, "current", as_phasor(self.current))

    @classmethod
    def at(cls, x: float, y: float, current: complex) -> "Conductor":
        return cls(Point2(x, y), current)


def conductor_arrays(conductors: Sequence[Conductor]):
    """Split conductors into (x, y, current) numpy arrays."""
    cx = np.array([c.position.x for c in conductors], dtype=float)
    cy = np.array([c.position.y for c in conductors], dtype=float)
    cur = np.array([c.current for c in conductors], dtype=complex)
    return cx, cy, cur


def canonical_order(conductors: Sequence[Conductor]) -> list[int]:
    """Indices sorting by ascending x, ties by ascending y."""
    return sorted(range(len(conductors)),
                  key=lambda i: (conductors[i].position.x, conductors[i].position.y))


@dataclass(frozen=True)
class FieldSample:
    position: Point2
    bx: complex
    by: complex


def signed_area(xy: np.ndarray) -> float:
    """Shoelace signed area of a closed polygon; positive when counterclockwise."""
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


@dataclass(frozen=True, eq=False)
class MeasurementSet:
    """Closed loop of field samples; segment i runs sample i -> sample (i+1) mod n.

    ``positions`` is (n, 2) in metres; ``bx``/``by`` are complex tesla.
    ``r_meas`` is the circle radius for circular contours and ``None`` for an
    arbitrary polygon.  Arrays are frozen after construction.
    """

    positions: np.ndarray
    bx: np.ndarray
    by: np.ndarray
    r_meas: float | None = None

    def __post_init__(self):
        pos = np.array(self.positions, dtype=float).reshape(-1, 2)
        bx = np.array(self.bx, dtype=complex).reshape(-1)
        by = np.array(self.by, dtype=complex).reshape(-1)
        if not (len(pos) == len(bx) == len(by)):
            raise ValueError("positions, bx and by must have equal length")
        if len(pos) < 3:
            raise ValueError(f"a measurement contour needs at least 3 samples, got {len(pos)}")
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(bx)) and np.all(np.isfinite(by))):
            raise ValueError("measurement data must be finite")
        steps = np.hypot(*(np.roll(pos, -1, axis=0) - pos).T)
        if np.any(steps == 0.0):
            raise ValueError("consecutive sample positions must be distinct")
        if signed_area(pos) <= 0.0:
            raise ValueError("measurement contour must be counterclockwise")
        if self.r_meas is not None:
            r = float(self.r_meas)
            if not r > 0:
                raise ValueError("r_meas must be positive")
            dev = np.max(np.abs(np.hypot(pos[:, 0], pos[:, 1]) - r))
            if dev > 1e-12 * r:
                raise ValueError(f"samples leave the circle of radius {r} by {dev:.3e} m")
            object.__setattr__(self, "r_meas", r)
        for a in (pos, bx, by):
            a.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "bx", bx)
        object.__setattr__(self, "by", by)

    @property
    def n_meas(self) -> int:
        return len(self.positions)

    @property
    def samples(self) -> tuple[FieldSample, ...]:
        return tuple(FieldSample(Point2(*p), complex(a), complex(b))
                     for p, a, b in zip(self.positions, self.bx, self.by))

    def subset(self, index) -> "MeasurementSet":
        return MeasurementSet(self.positions[index], self.bx[index], self.by[index], self.r_meas)

    def even(self) -> "MeasurementSet":
        return self.subset(slice(0, None, 2))

    def odd(self) -> "MeasurementSet":
        return self.subset(slice(1, None, 2))


@dataclass(frozen=True, eq=False)
class MomentVector:
    """Contour moments b_m for m = 0..m_max (amperes)."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(v)):
            raise ValueError("moments must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def m_max(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, m):
        return self.values[m]

    def scaled(self, factor: complex) -> "MomentVector":
        return MomentVector(self.values * factor)


@dataclass(frozen=True)
class ReconParams:
    n: int = 3
    m_offset: int = 1
    l_offset: int = 1
    quadrature_order: int = 8


@dataclass(frozen=True)
class Scenario:
    """An experiment: conductors, contour, noise and reconstruction settings."""

    internal: tuple[Conductor, ...]
    external: tuple[Conductor, ...] = ()
    r_meas: float = 1.0
    n_meas: int = 36
    noise_sigma_ref: float = 0.0
    seed: int = 0
    runs: int = 1
    recon: ReconParams = field(default_factory=ReconParams)

    def __post_init__(self):
        object.__setattr__(self, "internal", tuple(self.internal))
        object.__setattr__(self, "external", tuple(self.external))
        _check_finite("r_meas", float(self.r_meas))
        _check_finite("noise_sigma_ref", float(self.noise_sigma_ref))

    @property
    def conductors(self) -> tuple[Conductor, ...]:
        return self.internal + self.external

    def replace(self, **changes) -> "Scenario":
        from dataclasses import replace
        return replace(self, **changes)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_scenario(s: Scenario) -> ValidationReport:
    """Report every violated scenario invariant (empty report when valid)."""
    report = ValidationReport()
    v = report.violations
    if not s.r_meas > 0:
        v.append(f"r_meas must be positive, got {s.r_meas}")
    if s.n_meas < 3:
        v.append(f"n_meas must be at least 3, got {s.n_meas}")
    if s.noise_sigma_ref < 0:
        v.append(f"noise sigma_ref must be non-negative, got {s.noise_sigma_ref}")
    if s.runs < 1:
        v.append(f"runs must be at least 1, got {s.runs}")
    if not 0 <= s.seed < 2**64:
        v.append(f"seed must be an unsigned 64-bit integer, got {s.seed}")
    rp = s.recon
    if rp.n < 0 or rp.m_offset < 0 or rp.l_offset < 0 or rp.quadrature_order < 1:
        v.append(f"invalid reconstruction parameters {rp}")
    if rp.n != len(s.internal):
        v.append(f"recon n = {rp.n} differs from the {len(s.internal)} internal conductors")
    for i, c in enumerate(s.internal):
        if abs(c.position) >= s.r_meas:
            v.append(f"internal conductor {i} at ({c.position.x}, {c.position.y}): "
                     "conductor outside contour")
        if abs(c.position.x) >= math.pi * s.r_meas:
            v.append(f"internal conductor {i}: kernel invertibility |x| < pi*r_meas violated")
    for i, c in enumerate(s.external):
        if abs(c.position) <= s.r_meas:
            v.append(f"external conductor {i} at ({c.position.x}, {c.position.y}): "
                     "not strictly outside contour")
    return report

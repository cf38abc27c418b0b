"""Explicit recovery of line-current positions and currents from moments.

With f_n = f(r_n) the kernel values at the conductors, b_m = sum I_n f_n^m.
The f_n are the roots of a monic polynomial whose coefficients c solve the
Hankel system C_L c = -(b_{L+N}, ..., b_{L+2N-1}); the currents then solve
the Vandermonde-type system F_M I = (b_M, ..., b_{M+N-1}).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ClusteredRootsError, KernelDomainError
from .linalg import is_clustered, roots_of_monic, solve_dense
from .model import Conductor, MomentVector, Point2, canonical_order
from .moments import HarmonicKernel, kernel_eval, kernel_invert


def _require(b: MomentVector, lo: int, hi: int) -> np.ndarray:
    if lo < 0 or hi > b.m_max:
        raise ValueError(f"moments b_{lo}..b_{hi} needed, have b_0..b_{b.m_max}")
    return np.asarray(b.values)


def coefficient_system(b: MomentVector, n: int, l_offset: int = 1):
    """C_L (row i = b_{L+i}..b_{L+i+N-1}) and right side -(b_{L+N}..b_{L+2N-1})."""
    v = _require(b, l_offset, l_offset + 2 * n - 1)
    rows = np.array([[v[l_offset + i + k] for k in range(n)] for i in range(n)], dtype=complex)
    rhs = -v[l_offset + n:l_offset + 2 * n]
    return rows, rhs


def solve_coefficients(b: MomentVector, n: int, l_offset: int = 1) -> np.ndarray:
    """Monic polynomial coefficients (c_0..c_{N-1}) whose roots are the kernel values."""
    if n < 1:
        raise ValueError("need at least one conductor")
    return solve_dense(*coefficient_system(b, n, l_offset)).x


def current_system(roots, b: MomentVector, m_offset: int = 1):
    roots = np.asarray(roots, dtype=complex)
    n = len(roots)
    v = _require(b, m_offset, m_offset + n - 1)
    powers = np.arange(m_offset, m_offset + n)[:, None]
    return roots[None, :] ** powers, v[m_offset:m_offset + n]


def solve_currents(roots, b: MomentVector, m_offset: int = 1) -> np.ndarray:
    """Currents I from F_M I = b_M with row i = (f_1^{M+i}, ..., f_N^{M+i})."""
    roots = np.asarray(roots, dtype=complex)
    if is_clustered(roots):
        raise ClusteredRootsError("kernel values are not pairwise distinct")
    return solve_dense(*current_system(roots, b, m_offset)).x


@dataclass(frozen=True, eq=False)
class ReconstructionResult:
    conductors: tuple[Conductor, ...]
    root_values: np.ndarray
    cond_C: float
    cond_F: float
    moment_residual: float  # max |sum I f^m - b_m| over m = 0 .. highest moment used
    root_method: str = ""

    @property
    def n(self) -> int:
        return len(self.conductors)

    @property
    def positions(self) -> np.ndarray:
        return np.array([[c.position.x, c.position.y] for c in self.conductors]).reshape(-1, 2)

    @property
    def currents(self) -> np.ndarray:
        return np.array([c.current for c in self.conductors], dtype=complex)


def moment_residual(roots, currents, b: MomentVector, lo: int, hi: int) -> float:
    """max over m in [lo, hi] of |sum I_n f_n^m - b_m|."""
    m = np.arange(lo, hi + 1)[:, None]
    model = (np.asarray(roots)[None, :] ** m) @ np.asarray(currents)
    return float(np.max(np.abs(model - np.asarray(b.values)[lo:hi + 1]))) if len(m) else 0.0


def reconstruct(b: MomentVector, k: HarmonicKernel, n: int,
                m_offset: int = 1, l_offset: int = 1) -> ReconstructionResult:
    """Positions and currents of ``n`` line currents from their moments."""
    if n == 0:
        return ReconstructionResult((), np.zeros(0, dtype=complex), 1.0, 1.0, 0.0)
    c_sol = solve_dense(*coefficient_system(b, n, l_offset))
    roots = roots_of_monic(c_sol.x)
    if roots.clustered:
        raise ClusteredRootsError("recovered kernel values coincide; conductors unresolvable")
    f_sol = solve_dense(*current_system(roots.values, b, m_offset))
    currents = f_sol.x
    positions = []
    for f in roots.values:
        p = kernel_invert(k, f)
        if abs(abs(p.x) - np.pi * k.r_scale) <= 1e-12 * k.r_scale:
            raise KernelDomainError(f"root {f!r} lies on the edge of the kernel strip", f)
        positions.append(p)
    conductors = [Conductor(p, i) for p, i in zip(positions, currents)]
    order = canonical_order(conductors)
    # b_0 is never consumed by the solve, so including it makes the residual
    # a genuine consistency check rather than an interpolation identity
    lo = 0
    hi = max(l_offset + 2 * n - 1, m_offset + n - 1)
    return ReconstructionResult(
        conductors=tuple(conductors[i] for i in order),
        root_values=np.asarray(roots.values)[order],
        cond_C=c_sol.cond,
        cond_F=f_sol.cond,
        moment_residual=moment_residual(roots.values, currents, b, lo, hi),
        root_method=roots.method,
    )


def currents_only(positions: Sequence[Point2], b: MomentVector, k: HarmonicKernel,
                  m_offset: int = 1) -> np.ndarray:
    """Currents at known positions (the reduced problem)."""
    roots = np.array([kernel_eval(k, p) for p in positions], dtype=complex)
    return solve_currents(roots, b, m_offset)


def match_to_truth(found: Sequence[Point2], truth: Sequence[Point2]) -> tuple[int, ...]:
    """Permutation ``perm`` minimising sum |found[perm[i]] - truth[i]| (exhaustive)."""
    if len(found) != len(truth):
        raise ValueError("cannot match sets of different size")
    if len(truth) > 8:
        raise ValueError("exhaustive matching limited to 8 conductors")
    f = np.array([[p.x, p.y] for p in found]).reshape(-1, 2)
    t = np.array([[p.x, p.y] for p in truth]).reshape(-1, 2)
    dist = np.hypot(f[:, None, 0] - t[None, :, 0], f[:, None, 1] - t[None, :, 1])
    idx = np.arange(len(t))
    best = min(itertools.permutations(range(len(f))),
               key=lambda perm: dist[list(perm), idx].sum() if perm else 0.0)
    return tuple(best)

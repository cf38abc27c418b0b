"""Small dense complex solves and polynomial roots."""
from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import RootFindingError, SingularSystemError

PIVOT_RATIO_MIN = 1e-13


class DenseSolution(NamedTuple):
    x: np.ndarray
    cond: float  # max|u_ii| / min|u_ii| of the partially pivoted LU


def solve_dense(a, rhs) -> DenseSolution:
    """LU with partial pivoting; raises when the pivot ratio drops below 1e-13."""
    a = np.asarray(a, dtype=complex)
    rhs = np.asarray(rhs, dtype=complex)
    if a.shape[0] == 0:
        return DenseSolution(np.zeros(0, dtype=complex), 1.0)
    if not np.all(np.isfinite(a)) or not np.all(np.isfinite(rhs)):
        raise SingularSystemError("non-finite entries in linear system")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    big = pivots.max()
    ratio = pivots.min() / big if big > 0 else 0.0
    if ratio < PIVOT_RATIO_MIN:
        raise SingularSystemError(f"singular system: pivot ratio {ratio:.3e}", ratio)
    x = scipy.linalg.lu_solve((lu, piv), rhs, check_finite=False)
    return DenseSolution(x, 1.0 / ratio)


class Roots(NamedTuple):
    values: np.ndarray
    clustered: bool
    method: str
    residual: float


def _horner(coeffs_high_first, z):
    """p(z) and p'(z) for monic coefficients given highest degree first."""
    p = np.ones_like(z)
    dp = np.zeros_like(z)
    for c in coeffs_high_first[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _residual(coeffs_high_first, roots) -> float:
    if len(roots) == 0:
        return 0.0
    p, _ = _horner(coeffs_high_first, roots)
    return float(np.max(np.abs(p)))


def _aberth(coeffs_high_first, tol, max_iter):
    n = len(coeffs_high_first) - 1
    c = coeffs_high_first
    # initial guesses on a circle about the root centroid, radius from the Cauchy bound
    centre = -c[1] / n
    radius = max(np.max(np.abs(c[1:])) ** (1.0 / n), 1e-3) if n else 0.0
    z = centre + radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    for it in range(1, max_iter + 1):
        biggest = 0.0
        for i in range(n):
            p, dp = _horner(c, z[i:i + 1])
            p, dp = p[0], dp[0]
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else np.inf
            diff = z[i] - np.delete(z, i)
            repulsion = np.sum(1.0 / diff) if np.all(diff != 0) else 0.0
            step = ratio / (1.0 - ratio * repulsion)
            if not np.isfinite(step):
                step = 1e-3 * (1 + abs(z[i]))
            z[i] -= step
            biggest = max(biggest, abs(step) / max(1.0, abs(z[i])))
        if biggest <= tol:
            return z, True, it
    return z, False, max_iter


def _newton_polish(c, z, steps=3):
    for _ in range(steps):
        p, dp = _horner(c, z)
        z = z - np.divide(p, dp, out=np.zeros_like(p), where=dp != 0)
    return z


def is_clustered(roots, rel=1e-8) -> bool:
    roots = np.asarray(roots, dtype=complex)
    if len(roots) < 2:
        return False
    scale = np.max(np.abs(roots))
    d = np.abs(roots[:, None] - roots[None, :])
    d[np.diag_indices(len(roots))] = np.inf
    return bool(d.min() <= rel * scale)


def roots_of_monic(c, tol: float = 1e-12, max_iter: int = 100) -> Roots:
    """All roots of f^n + c_{n-1} f^{n-1} + ... + c_0 (``c`` ordered c_0..c_{n-1}).

    Aberth-Ehrlich simultaneous iteration; the companion-matrix eigenvalues
    are the fallback.  Every returned root satisfies
    |p(root)| <= 1e-8 max(1, max|c_i|).
    """
    c = np.asarray(c, dtype=complex)
    if not np.all(np.isfinite(c)):
        raise RootFindingError("non-finite polynomial coefficients")
    bound = 1e-8 * max(1.0, float(np.max(np.abs(c))) if len(c) else 1.0)
    zeros = 0
    while zeros < len(c) and c[zeros] == 0:
        zeros += 1
    high_first = np.concatenate([[1.0 + 0j], c[::-1]])
    reduced = high_first[:len(high_first) - zeros]
    found = np.zeros(zeros, dtype=complex)
    method = "trivial"
    if len(reduced) > 1:
        z, converged, _ = _aberth(reduced, tol, max_iter)
        method = "aberth"
        if not converged or _residual(high_first, z) > bound:
            companion = np.polynomial.polynomial.polycompanion(reduced[::-1])
            alt = _newton_polish(reduced, np.linalg.eigvals(companion))
            if _residual(high_first, alt) <= bound or not converged:
                z, method = alt, "companion"
        found = np.concatenate([z, found])
    res = _residual(high_first, found)
    if res > bound:
        raise RootFindingError(f"polynomial residual {res:.3e} exceeds {bound:.3e}")
    return Roots(found, is_clustered(found), method, res)

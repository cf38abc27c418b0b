"""End-to-end pipelines: clean-data study, Monte Carlo noise study, moment table."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import ReconstructionError
from ..forward import NoiseSpec, add_noise, derive_seed, sample_circle
from ..model import Conductor, MeasurementSet, Scenario, canonical_order
from ..moments import HarmonicKernel, MomentSet, exact_moments, extrapolated_moments
from ..prony import ReconstructionResult, match_to_truth, reconstruct


def required_m_max(s: Scenario) -> int:
    n, p = s.recon.n, s.recon
    return max(p.l_offset + 2 * n - 1, p.m_offset + n - 1, 0)


def sorted_truth(s: Scenario) -> list[Conductor]:
    return [s.internal[i] for i in canonical_order(s.internal)]


def reconstruct_measurements(ms: MeasurementSet, s: Scenario, quad_order: int | None = None,
                             m_max: int | None = None) -> tuple[MomentSet, ReconstructionResult]:
    """Even/odd/all moments, Richardson extrapolation, then explicit inversion."""
    k = HarmonicKernel(s.r_meas)
    q = s.recon.quadrature_order if quad_order is None else quad_order
    mm = required_m_max(s) if m_max is None else max(m_max, required_m_max(s))
    moments = extrapolated_moments(ms, k, mm, q)
    result = reconstruct(moments.extrapol, k, s.recon.n, s.recon.m_offset, s.recon.l_offset)
    return moments, result


@dataclass
class Matched:
    """Reconstruction reordered to the canonically sorted true conductors."""

    positions: np.ndarray      # (N, 2) metres
    currents: np.ndarray       # (N,) amperes
    dx_frac: np.ndarray        # displacement / r_meas
    dy_frac: np.ndarray
    dcurrent: np.ndarray       # reconstructed - true


def match(result: ReconstructionResult, s: Scenario) -> Matched:
    truth = sorted_truth(s)
    perm = match_to_truth([c.position for c in result.conductors], [c.position for c in truth])
    pos = result.positions[list(perm)]
    cur = result.currents[list(perm)]
    tpos = np.array([[c.position.x, c.position.y] for c in truth]).reshape(-1, 2)
    tcur = np.array([c.current for c in truth], dtype=complex)
    return Matched(pos, cur, (pos[:, 0] - tpos[:, 0]) / s.r_meas,
                   (pos[:, 1] - tpos[:, 1]) / s.r_meas, cur - tcur)


@dataclass
class CleanStudyRow:
    n_meas: int
    result: ReconstructionResult | None = None
    matched: Matched | None = None
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error


def run_clean_study(s: Scenario, n_values: Sequence[int] = (72, 36, 18),
                    quad_order: int | None = None) -> list[CleanStudyRow]:
    """Reconstruct from noise-free data for each n_meas; a failing row does not stop the rest."""
    if s.recon.n == 0:
        return []
    rows = []
    for n in n_values:
        try:
            _, result = reconstruct_measurements(sample_circle(s, n), s, quad_order)
            rows.append(CleanStudyRow(n, result, match(result, s)))
        except (ReconstructionError, ValueError) as exc:
            rows.append(CleanStudyRow(n, error=f"{type(exc).__name__}: {exc}"))
    return rows


@dataclass
class RunRecord:
    run: int
    seed: int
    result: ReconstructionResult | None = None
    matched: Matched | None = None
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error


@dataclass
class MonteCarloResult:
    n_meas: int
    sigma_ref: float
    seed: int
    records: list[RunRecord] = field(default_factory=list)

    @property
    def successes(self) -> list[RunRecord]:
        return [r for r in self.records if r.ok]

    @property
    def n_failed(self) -> int:
        return sum(not r.ok for r in self.records)

    def position_stack(self) -> np.ndarray:
        """(runs_ok, N, 2) matched positions."""
        return np.array([r.matched.positions for r in self.successes])

    def current_stack(self) -> np.ndarray:
        return np.array([r.matched.currents for r in self.successes])

    def summary(self) -> dict[str, np.ndarray]:
        """Per-conductor mean and RMS spread of positions and currents over successful runs."""
        pos, cur = self.position_stack(), self.current_stack()
        if len(pos) == 0:
            return {}
        mean_pos = pos.mean(axis=0)
        mean_cur = cur.mean(axis=0)
        return {
            "mean_position": mean_pos,
            "rms_position_spread": np.sqrt(np.mean(np.sum((pos - mean_pos) ** 2, axis=2), axis=0)),
            "mean_current": mean_cur,
            "rms_current_spread": np.sqrt(np.mean(np.abs(cur - mean_cur) ** 2, axis=0)),
        }

    def position_errors(self, truth: np.ndarray) -> np.ndarray:
        """Per run, the mean over conductors of |reconstructed - truth| (metres)."""
        pos = self.position_stack()
        return np.mean(np.hypot(*(pos - truth[None]).transpose(2, 0, 1)), axis=1)


def _one_run(clean: MeasurementSet, s: Scenario, sigma_ref: float, run: int, seed: int,
             quad_order: int | None) -> RunRecord:
    noisy = add_noise(clean, NoiseSpec(sigma_ref, seed))
    try:
        _, result = reconstruct_measurements(noisy, s, quad_order)
        return RunRecord(run, seed, result, match(result, s))
    except (ReconstructionError, ValueError) as exc:
        return RunRecord(run, seed, error=f"{type(exc).__name__}: {exc}")


def run_montecarlo(s: Scenario, n_meas: int | None = None, sigma_ref: float | None = None,
                   runs: int | None = None, seed: int | None = None,
                   quad_order: int | None = None, workers: int = 1) -> MonteCarloResult:
    """Seeded noisy reconstructions; run i uses derive_seed(master seed, i).

    Failed runs are kept as records with ``error`` set, so the record count
    always equals ``runs``.
    """
    n = s.n_meas if n_meas is None else n_meas
    sigma = s.noise_sigma_ref if sigma_ref is None else sigma_ref
    count = s.runs if runs is None else runs
    master = s.seed if seed is None else seed
    if count < 1:
        raise ValueError("runs must be at least 1")
    clean = sample_circle(s, n)
    seeds = [derive_seed(master, i) for i in range(count)]
    args = [(clean, s, sigma, i, seeds[i], quad_order) for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_one_run, *zip(*args)))
    else:
        records = [_one_run(*a) for a in args]
    return MonteCarloResult(n, sigma, master, records)


@dataclass(frozen=True)
class Table2Row:
    m: int
    even: complex
    odd: complex
    all: complex
    extrapol: complex
    exact: complex


def emit_table2(s: Scenario, m_values: Sequence[int] = range(1, 7),
                quad_order: int | None = None) -> list[Table2Row]:
    """Even/odd/all/extrapolated contour moments beside the exact ones."""
    if s.n_meas % 2:
        raise ValueError(f"table needs an even n_meas, got {s.n_meas}")
    m_values = list(m_values)
    k = HarmonicKernel(s.r_meas)
    q = s.recon.quadrature_order if quad_order is None else quad_order
    m_max = max(m_values, default=0)
    ms = extrapolated_moments(sample_circle(s), k, m_max, q)
    exact = exact_moments(s.internal, k, m_max)
    return [Table2Row(m, complex(ms.even[m]), complex(ms.odd[m]), complex(ms.all[m]),
                      complex(ms.extrapol[m]), complex(exact[m])) for m in m_values]

"""CSV layouts.  Floats are written with ``repr`` (shortest round-trip form)."""
from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

from ..model import MeasurementSet, MomentVector, Scenario
from ..moments import MomentSet
from ..prony import ReconstructionResult
from ..silent import SilentReport
from .studies import CleanStudyRow, MonteCarloResult, Table2Row, sorted_truth


def num(x) -> str:
    return repr(float(x))


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def samples_csv(ms: MeasurementSet) -> str:
    rows = ([k, num(p[0]), num(p[1]), num(a.real), num(a.imag), num(b.real), num(b.imag)]
            for k, (p, a, b) in enumerate(zip(ms.positions, ms.bx, ms.by)))
    return _csv(["k", "x", "y", "bx_re", "bx_im", "by_re", "by_im"], rows)


def moments_csv(ms: MomentSet, exact: MomentVector) -> str:
    cols = ("all", "even", "odd", "extrapol", "exact")
    header = ["m"] + [f"{c}_{part}" for c in cols for part in ("re", "im")]
    rows = []
    for m in range(len(exact)):
        vals = (ms.all[m], ms.even[m], ms.odd[m], ms.extrapol[m], exact[m])
        rows.append([m] + [num(p) for v in vals for p in (v.real, v.imag)])
    return _csv(header, rows)


def table2_csv(rows: Sequence[Table2Row]) -> str:
    cols = ("even", "odd", "all", "extrapol", "exact")
    header = ["m"] + [f"{c}_{part}" for c in cols for part in ("re", "im")]

    def f3(x):
        s = f"{x:.3f}"
        return "0.000" if s == "-0.000" else s

    body = [[r.m] + [f3(p) for c in cols for p in (getattr(r, c).real, getattr(r, c).imag)]
            for r in rows]
    return _csv(header, body)


_DIAG = ["cond_c", "cond_f", "moment_residual"]


def reconstruction_csv(result: ReconstructionResult, r_meas: float) -> str:
    rows = []
    for i, (c, f) in enumerate(zip(result.conductors, result.root_values)):
        rows.append([i, num(c.position.x), num(c.position.y),
                     num(100 * c.position.x / r_meas), num(100 * c.position.y / r_meas),
                     num(c.current.real), num(c.current.imag), num(f.real), num(f.imag),
                     num(result.cond_C), num(result.cond_F), num(result.moment_residual)])
    return _csv(["conductor", "x", "y", "x_pct", "y_pct", "i_re", "i_im", "root_re", "root_im"]
                + _DIAG, rows)


def clean_study_csv(rows: Sequence[CleanStudyRow], s: Scenario) -> str:
    truth = sorted_truth(s)
    out = []
    for row in rows:
        if not row.ok:
            out.append([row.n_meas, "failed"] + [""] * 9 + [row.error])
            continue
        m = row.matched
        for i, t in enumerate(truth):
            out.append([row.n_meas, "ok", i, num(t.position.x), num(t.position.y),
                        num(m.positions[i, 0]), num(m.positions[i, 1]),
                        num(100 * m.dx_frac[i]), num(100 * m.dy_frac[i]),
                        num(m.currents[i].real), num(m.currents[i].imag), ""])
    return _csv(["n_meas", "status", "conductor", "x_true", "y_true", "x", "y",
                 "dx_pct", "dy_pct", "i_re", "i_im", "error"], out)


def montecarlo_csv(mc: MonteCarloResult) -> str:
    out = []
    for rec in mc.records:
        if not rec.ok:
            out.append([rec.run, rec.seed, "failed"] + [""] * 12 + [rec.error])
            continue
        m, r = rec.matched, rec.result
        for i in range(len(m.currents)):
            out.append([rec.run, rec.seed, "ok", i, num(m.positions[i, 0]), num(m.positions[i, 1]),
                        num(100 * m.dx_frac[i]), num(100 * m.dy_frac[i]),
                        num(m.currents[i].real), num(m.currents[i].imag),
                        num(m.dcurrent[i].real), num(m.dcurrent[i].imag),
                        num(r.cond_C), num(r.cond_F), num(r.moment_residual), ""])
    return _csv(["run", "seed", "status", "conductor", "x", "y", "dx_pct", "dy_pct",
                 "i_re", "i_im", "di_re", "di_im"] + _DIAG + ["error"], out)


def silent_csv(checks: Sequence[tuple[str, SilentReport, bool]]) -> str:
    out = []
    for name, report, expect_pass in checks:
        for row in report.rows:
            out.append([name, row.m, num(row.contribution), num(row.scale), num(row.relative),
                        num(row.tolerance), "pass" if row.passed else "fail",
                        "pass" if expect_pass else "fail"])
    return _csv(["check", "m", "contribution", "scale", "relative", "tolerance",
                 "result", "expected"], out)

"""Command-line entry point: ``linecurrents <subcommand> [--config F] [--out F] ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from ..errors import ReconstructionError
from ..forward import NoiseSpec, add_noise, sample_circle
from ..model import Conductor, Point2, validate_scenario
from ..moments import HarmonicKernel, exact_moments, extrapolated_moments
from ..silent import CoaxialProfile, build_canceller, verify_silent_moments
from . import output
from .scenario import ScenarioFormatError, load_scenario, table1_scenario
from .studies import (emit_table2, reconstruct_measurements, required_m_max, run_clean_study,
                      run_montecarlo)

OUT_DIR_ENV = "LINECURRENTS_OUTPUT_DIR"


class CliError(Exception):
    pass


def _scenario(args):
    s = load_scenario(args.config) if args.config else table1_scenario()
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if getattr(args, "n_meas", None) is not None:
        changes["n_meas"] = args.n_meas
    if args.quad_order is not None:
        changes["recon"] = replace(s.recon, quadrature_order=args.quad_order)
    if changes:
        s = s.replace(**changes)
    report = validate_scenario(s)
    if not report.ok:
        raise CliError("invalid scenario: " + "; ".join(report.violations))
    return s


def _measure(args, s):
    ms = sample_circle(s)
    if getattr(args, "noise", False):
        ms = add_noise(ms, NoiseSpec(s.noise_sigma_ref, s.seed))
    return ms


def cmd_simulate(args):
    s = _scenario(args)
    return output.samples_csv(_measure(args, s))


def cmd_moments(args):
    s = _scenario(args)
    k = HarmonicKernel(s.r_meas)
    m_max = args.m_max if args.m_max is not None else required_m_max(s)
    ms = extrapolated_moments(_measure(args, s), k, m_max, s.recon.quadrature_order)
    return output.moments_csv(ms, exact_moments(s.internal, k, m_max))


def cmd_reconstruct(args):
    s = _scenario(args)
    _, result = reconstruct_measurements(_measure(args, s), s)
    return output.reconstruction_csv(result, s.r_meas)


def cmd_clean_study(args):
    s = _scenario(args)
    n_values = [int(v) for v in args.n_values.split(",")]
    return output.clean_study_csv(run_clean_study(s, n_values), s)


def cmd_montecarlo(args):
    s = _scenario(args)
    mc = run_montecarlo(s, sigma_ref=args.sigma_ref, runs=args.runs, workers=args.workers)
    return output.montecarlo_csv(mc)


def cmd_table2(args):
    s = _scenario(args)
    return output.table2_csv(emit_table2(s, range(1, args.m_max + 1)))


def default_silent_checks(m_max: int = 6, tolerance: float = 1e-8, n_samples: int = 3600):
    """The silent-source verifications with their negative controls: (name, report, expected)."""
    k = HarmonicKernel(1.0)
    centre, a0 = Point2(0.2, 0.1), 0.3
    profile = CoaxialProfile(centre, a0, lambda rho: 1.0 - 2.0 * rho**2 / a0**2)
    inner = Conductor.at(centre.x + 0.3 * a0, centre.y, 1.0)
    canceller = build_canceller(inner, centre, a0, n_samples)
    return [
        ("coaxial", verify_silent_moments(profile, k, m_max, tolerance), True),
        ("canceller", verify_silent_moments(canceller, k, m_max, tolerance,
                                            contour_radius=3 * a0), True),
        ("bare-conductor", verify_silent_moments([inner], k, m_max, tolerance,
                                                 contour_radius=3 * a0), False),
    ]


def cmd_silent_check(args):
    checks = default_silent_checks(args.m_max, args.tolerance)
    text = output.silent_csv(checks)
    bad = [name for name, report, expect in checks if report.passed != expect]
    if bad:
        raise CliError("silent-source checks did not behave as expected: " + ", ".join(bad))
    return text


def build_parser() -> argparse.ArgumentParser:
    def global_flags(p, default):
        p.add_argument("--config", type=Path, default=default,
                       help="scenario YAML file (default: built-in test case)")
        p.add_argument("--out", type=Path, default=default, help="output CSV path (default: stdout)")
        p.add_argument("--seed", type=int, default=default, help="master seed, overrides the file")
        p.add_argument("--quad-order", type=int, default=default,
                       help="Gauss-Legendre order per segment")

    parser = argparse.ArgumentParser(prog="linecurrents",
                                     description="Reconstruct line currents from contour field data.")
    global_flags(parser, None)
    sub = parser.add_subparsers(dest="command", required=True)
    # flags may also follow the subcommand; SUPPRESS keeps earlier values
    local = argparse.ArgumentParser(add_help=False)
    global_flags(local, argparse.SUPPRESS)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[local], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("simulate", cmd_simulate, "emit sampled field data")
    p.add_argument("--n-meas", type=int)
    p.add_argument("--noise", action="store_true", help="add the scenario's seeded noise")

    p = add("moments", cmd_moments, "emit the b_m table at full precision")
    p.add_argument("--n-meas", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--noise", action="store_true")

    p = add("reconstruct", cmd_reconstruct, "run one reconstruction")
    p.add_argument("--n-meas", type=int)
    p.add_argument("--noise", action="store_true")

    p = add("clean-study", cmd_clean_study, "clean-data reconstructions for several n_meas")
    p.add_argument("--n-values", default="72,36,18")

    p = add("montecarlo", cmd_montecarlo, "seeded noisy reconstructions")
    p.add_argument("--n-meas", type=int)
    p.add_argument("--sigma-ref", type=float)
    p.add_argument("--runs", type=int)
    p.add_argument("--workers", type=int, default=1)

    p = add("table2", cmd_table2, "even/odd/all/extrapolated/exact moment table")
    p.add_argument("--m-max", type=int, default=6)

    p = add("silent-check", cmd_silent_check, "verify silent-source constructions")
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--tolerance", type=float, default=1e-8)
    return parser


def _resolve_out(path: Path) -> Path:
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        return Path(base) / path
    return path


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
        if args.out is None:
            sys.stdout.write(text)
        else:
            out = _resolve_out(args.out)
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text, encoding="utf-8")
    except (CliError, ReconstructionError, ScenarioFormatError, ValueError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

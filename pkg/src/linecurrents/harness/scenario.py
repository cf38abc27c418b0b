"""Scenario files (YAML).

Schema::

    r_meas: 1.0            # metres, radius of the measurement circle
    n_meas: 36             # number of samples on the circle
    units: r_meas          # coordinates in units of r_meas ("r_meas") or metres ("m")
    internal:              # conductors to reconstruct
      - {x: -0.5, y: -0.5, re: 0.0, im: -1.0}
    external:              # disturbance conductors outside the circle
      - {x: -1.5, y: -0.5, re: 1.0, im: 0.0}
    noise: {sigma_ref: 0.01, seed: 20120601, runs: 50}
    recon: {n: 3, m_offset: 1, l_offset: 1, quadrature_order: 8}

Every key except ``r_meas`` and ``internal`` is optional; ``recon.n``
defaults to the number of internal conductors.
"""
from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml

from ..model import Conductor, ReconParams, Scenario

_TOP_KEYS = {"r_meas", "n_meas", "units", "internal", "external", "noise", "recon"}


class ScenarioFormatError(ValueError):
    pass


def _conductors(items, scale: float, where: str) -> tuple[Conductor, ...]:
    out = []
    for i, item in enumerate(items or []):
        if not isinstance(item, dict) or not {"x", "y"} <= item.keys():
            raise ScenarioFormatError(f"{where}[{i}] needs x and y")
        unknown = set(item) - {"x", "y", "re", "im"}
        if unknown:
            raise ScenarioFormatError(f"{where}[{i}] has unknown keys {sorted(unknown)}")
        current = complex(float(item.get("re", 0.0)), float(item.get("im", 0.0)))
        out.append(Conductor.at(float(item["x"]) * scale, float(item["y"]) * scale, current))
    return tuple(out)


def parse_scenario(data: dict[str, Any]) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioFormatError("scenario must be a mapping")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ScenarioFormatError(f"unknown scenario keys {sorted(unknown)}")
    try:
        r_meas = float(data["r_meas"])
    except KeyError:
        raise ScenarioFormatError("r_meas is required") from None
    units = data.get("units", "m")
    if units not in ("m", "r_meas"):
        raise ScenarioFormatError(f"units must be 'm' or 'r_meas', got {units!r}")
    scale = r_meas if units == "r_meas" else 1.0
    internal = _conductors(data.get("internal"), scale, "internal")
    external = _conductors(data.get("external"), scale, "external")
    noise = data.get("noise") or {}
    recon = dict(data.get("recon") or {})
    recon.setdefault("n", len(internal))
    try:
        params = ReconParams(**{k: int(v) for k, v in recon.items()})
    except TypeError as exc:
        raise ScenarioFormatError(f"bad recon block: {exc}") from None
    return Scenario(
        internal=internal,
        external=external,
        r_meas=r_meas,
        n_meas=int(data.get("n_meas", 36)),
        noise_sigma_ref=float(noise.get("sigma_ref", 0.0)),
        seed=int(noise.get("seed", 0)),
        runs=int(noise.get("runs", 1)),
        recon=params,
    )


def load_scenario(path: str | Path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(yaml.safe_load(fh))


def scenario_to_dict(s: Scenario) -> dict[str, Any]:
    def cond(c):
        return {"x": c.position.x, "y": c.position.y, "re": c.current.real, "im": c.current.imag}

    return {
        "r_meas": s.r_meas,
        "n_meas": s.n_meas,
        "units": "m",
        "internal": [cond(c) for c in s.internal],
        "external": [cond(c) for c in s.external],
        "noise": {"sigma_ref": s.noise_sigma_ref, "seed": s.seed, "runs": s.runs},
        "recon": {"n": s.recon.n, "m_offset": s.recon.m_offset, "l_offset": s.recon.l_offset,
                  "quadrature_order": s.recon.quadrature_order},
    }


def dump_scenario(s: Scenario, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(scenario_to_dict(s), fh, sort_keys=False)


def table1_scenario(r_meas: float = 1.0, n_meas: int = 36) -> Scenario:
    """Three internal conductors and two disturbance conductors (coordinates / r_meas).

    Internal currents (-j, 2, -1) A; external (1, 2j) A.
    """
    return parse_scenario({
        "r_meas": r_meas,
        "n_meas": n_meas,
        "units": "r_meas",
        "internal": [
            {"x": -0.5, "y": -0.5, "re": 0.0, "im": -1.0},
            {"x": 0.0, "y": -0.5, "re": 2.0, "im": 0.0},
            {"x": 0.5, "y": -0.5, "re": -1.0, "im": 0.0},
        ],
        "external": [
            {"x": -1.5, "y": -0.5, "re": 1.0, "im": 0.0},
            {"x": 1.0, "y": 1.0, "re": 0.0, "im": 2.0},
        ],
        "noise": {"sigma_ref": 0.01, "seed": 20120601, "runs": 50},
        "recon": {"n": 3, "m_offset": 1, "l_offset": 1, "quadrature_order": 8},
    })

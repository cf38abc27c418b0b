import math

import numpy as np
import pytest

from linecurrents.forward import circle_points, sample_circle
from linecurrents.model import (Conductor, MeasurementSet, MomentVector, Point2, ReconParams,
                                Scenario, canonical_order, signed_area, validate_scenario)
from linecurrents.harness import load_scenario
from conftest import ROOT


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_nonfinite_rejected(bad):
    with pytest.raises(ValueError):
        Point2(bad, 0.0)
    with pytest.raises(ValueError):
        Conductor.at(0.0, 0.0, complex(1.0, bad))
    with pytest.raises(ValueError):
        MomentVector([1.0, bad])
    pts = circle_points(1.0, 8)
    bx = np.zeros(8, complex)
    bx[3] = bad
    with pytest.raises(ValueError):
        MeasurementSet(pts, bx, np.zeros(8), 1.0)


def test_table1_scenario_valid(scenario):
    assert validate_scenario(scenario).ok


def test_file_scenario_matches_builtin(scenario):
    assert load_scenario(ROOT / "scenarios" / "table1.yaml") == scenario


def test_conductor_outside_contour_reported(scenario):
    s = scenario.replace(internal=(Conductor.at(1.5, 0.0, 1.0),), recon=ReconParams(n=1))
    report = validate_scenario(s)
    assert any("conductor outside contour" in v for v in report.violations)


def test_kernel_strip_threshold():
    ok = Scenario(internal=(Conductor.at(3.5, 0.0, 1.0),), r_meas=4.0, recon=ReconParams(n=1))
    assert not any("kernel" in v for v in validate_scenario(ok).violations)
    bad = ok.replace(internal=(Conductor.at(13.0, 0.0, 1.0),))
    assert any("kernel invertibility" in v for v in validate_scenario(bad).violations)


def test_external_inside_reported(scenario):
    s = scenario.replace(external=(Conductor.at(0.2, 0.2, 1.0),))
    assert any("external conductor 0" in v for v in validate_scenario(s).violations)


def test_reversed_orientation_fails(scenario):
    ms = sample_circle(scenario)
    assert signed_area(ms.positions) > 0
    rev = ms.positions[::-1]
    assert signed_area(rev) == pytest.approx(-signed_area(ms.positions))
    with pytest.raises(ValueError, match="counterclockwise"):
        MeasurementSet(rev, ms.bx[::-1], ms.by[::-1], 1.0)


def test_repeated_sample_rejected():
    pts = circle_points(1.0, 6)
    pts[2] = pts[1]
    with pytest.raises(ValueError, match="distinct"):
        MeasurementSet(pts, np.zeros(6), np.zeros(6), 1.0)


def test_off_circle_sample_rejected():
    pts = circle_points(1.0, 6) * 1.001
    with pytest.raises(ValueError, match="circle"):
        MeasurementSet(pts, np.zeros(6), np.zeros(6), 1.0)


def test_measurement_set_is_immutable(scenario):
    ms = sample_circle(scenario)
    with pytest.raises(ValueError):
        ms.bx[0] = 1.0
    assert len(ms.samples) == ms.n_meas == 36


def test_canonical_order_ties_by_y():
    cs = [Conductor.at(0.5, 0.0, 1), Conductor.at(0.0, 0.3, 1), Conductor.at(0.0, -0.3, 1)]
    assert canonical_order(cs) == [2, 1, 0]

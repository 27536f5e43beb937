import json
import math
import xml.etree.ElementTree as ET

import pytest

from conecurve import report
from conecurve.cone import fit_cone


@pytest.mark.parametrize("x,frac", [(math.pi, "1"), (0.75 * math.pi, "3/4"), (-math.pi / 3, "-1/3"),
                                    (2 * math.pi, "2"), (0.0, "0"), (5 * math.pi / 24, "5/24")])
def test_pi_fraction(x, frac):
    assert report.pi_fraction(x) == frac


def test_pi_fraction_rejects_other_values():
    assert report.pi_fraction(1.0) is None
    assert report.pi_fraction(math.pi / 25) is None
    assert report.pi_fraction(float("nan")) is None


def test_angle_fields_get_pi_siblings():
    out = report.normalize({"apex_angle": math.pi, "length": math.pi, "turns": [math.pi / 2, 1.0]})
    assert out["apex_angle_pi"] == "1"
    assert "length_pi" not in out
    assert out["turns_pi"] == ["1/2", None]


def test_floats_are_rounded_to_twelve_digits():
    assert report.normalize(1 / 3) == 0.333333333333
    assert report.normalize(-1e-17) == -1e-17
    assert report.normalize(float("inf")) == "inf"


def test_dumps_is_byte_stable(item):
    fit = fit_cone(item("house").curve, "left")
    a, b = report.dumps(fit), report.dumps(fit_cone(item("house").curve, "left"))
    assert a == b
    assert json.loads(a)["cone"]["apex_angle_pi"] == "1"


def test_unserializable_objects_raise():
    with pytest.raises(TypeError):
        report.normalize(object())


def test_svg_is_self_contained(item):
    svg = report.fit_figure(fit_cone(item("house").curve, "left"))
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert "href" not in svg
    assert root.find("{http://www.w3.org/2000/svg}polyline") is not None


def test_svg_y_axis_points_up():
    svg = report.development_svg([(0.0, 0.0), (0.0, 1.0)])
    line = ET.fromstring(svg).find("{http://www.w3.org/2000/svg}polyline")
    (_, y0), (_, y1) = [tuple(map(float, p.split(","))) for p in line.get("points").split()]
    assert y1 < y0

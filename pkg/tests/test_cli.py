import json
import xml.etree.ElementTree as ET

import pytest

from conecurve import checks
from conecurve.checks import CriterionResult
from conecurve.cli import main


@pytest.fixture(scope="module")
def gallery_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("gallery")
    for name in ("icosahedron", "house_with_spike", "house"):
        assert main(["gallery", name, "--out", str(root / name)]) == 0
    return root


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def files(root, name, curve="C"):
    return ["--surface", str(root / name / "surface.json"), "--curve", str(root / name / f"curve_{curve}.json")]


def test_classify_icosahedron(gallery_dir, capsys):
    code, out, _ = run(capsys, "classify", *files(gallery_dir, "icosahedron"))
    assert code == 0
    assert json.loads(out)["quasigeodesic"] is True


def test_fit_cone_failure_is_reported_not_raised(gallery_dir, capsys):
    code, out, _ = run(capsys, "fit-cone", "--side", "L", *files(gallery_dir, "house_with_spike"))
    assert code == 0
    assert json.loads(out)["lives_on_cone"] is False


def test_fit_cone_svg(gallery_dir, capsys, tmp_path):
    svg = tmp_path / "fit.svg"
    code, out, _ = run(capsys, "fit-cone", "--side", "left", "--svg", str(svg), *files(gallery_dir, "house"))
    assert code == 0
    assert json.loads(out)["cone"]["apex_angle_pi"] == "1"
    assert ET.parse(svg).getroot().tag.endswith("svg")


def test_develop_cut_forms(gallery_dir, capsys):
    for cut in ("0", "0.25", "2:0.5"):
        code, out, _ = run(capsys, "develop", "--side", "L", "--cut", cut, *files(gallery_dir, "house"))
        assert code == 0
        assert json.loads(out)["simple"] is True


def test_bad_cut_is_a_usage_error(gallery_dir, capsys):
    code, _, err = run(capsys, "develop", "--cut", "x", *files(gallery_dir, "house"))
    assert code == 2 and "bad cut" in err


def test_malformed_surface_lists_violations(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": [0, 1, 2], "triangles": [[0, 1, 2]],
                               "edge_lengths": [[0, 1, 1.0], [1, 2, 1.0], [0, 2, 5.0]]}))
    code, out, _ = run(capsys, "validate", "--surface", str(bad))
    assert code == 1
    rep = json.loads(out)["surface"]
    assert rep["ok"] is False and rep["violations"]


def test_valid_surface_and_curve(gallery_dir, capsys):
    code, out, _ = run(capsys, "validate", *files(gallery_dir, "house"))
    assert code == 0
    rep = json.loads(out)
    assert rep["surface"]["ok"] and rep["curve"]["ok"]


def test_usage_errors_exit_2(tmp_path, capsys):
    assert main(["classify"]) == 2
    assert main(["no-such-command"]) == 2
    code, _, err = run(capsys, "classify", "--surface", str(tmp_path / "missing.json"), "--curve", "x")
    assert code == 2 and "cannot read" in err


def test_tolerance_override(gallery_dir, capsys, monkeypatch):
    monkeypatch.setenv("CONECURVE_TOL", "1")
    assert main(["classify", *files(gallery_dir, "house")]) == 2
    monkeypatch.setenv("CONECURVE_TOL", "1e-8")
    assert main(["classify", *files(gallery_dir, "house")]) == 0


def test_config_file(gallery_dir, tmp_path, capsys):
    good, bad = tmp_path / "good.json", tmp_path / "bad.json"
    good.write_text(json.dumps({"samples": 8}))
    bad.write_text(json.dumps({"colour": "red"}))
    code, out, _ = run(capsys, "--config", str(good), "develop-all", *files(gallery_dir, "house"))
    assert code == 0
    kinds = [r["kind"] for r in json.loads(out)["rows"]]
    assert kinds.count("uniform") <= 8 < len(kinds)
    assert main(["--config", str(bad), "classify", *files(gallery_dir, "house")]) == 2


def test_reports_are_byte_identical(gallery_dir, capsys):
    outs = [run(capsys, "partition", *files(gallery_dir, "icosahedron"))[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_merge_writes_surface(gallery_dir, tmp_path, capsys):
    out_path = tmp_path / "merged.json"
    code, out, _ = run(capsys, "merge", "--surface", str(gallery_dir / "house" / "surface.json"),
                       "--v1", "8", "--v2", "9", "--out", str(out_path))
    assert code == 0
    rep = json.loads(out)
    assert rep["merge"]["omega_pi"] == "1"
    assert main(["validate", "--surface", str(out_path)]) == 0


def test_check_paper_table(monkeypatch, capsys, tmp_path):
    # stand-in criteria keep this test fast; the real run lives in the acceptance suite
    def fake(ok):
        def crit(tol, **kw):
            r = CriterionResult(1 if ok else 2, "stand-in", "house")
            r.add("only check", ok)
            return r
        return crit

    monkeypatch.setattr(checks, "CRITERIA", {1: fake(True), 2: fake(False)})
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "check-paper", "--cases", "1", "--verbose", "--json", str(report))
    assert code == 1
    assert "PASS" in out and "FAIL" in out
    assert out.rstrip().endswith("s") and "1/2 criteria passed" in out
    assert [r["passed"] for r in json.loads(report.read_text())] == [True, False]

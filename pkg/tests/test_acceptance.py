"""Every acceptance criterion at its stated tolerance.

One ``check-paper`` run, timed end to end, supplies the results for
criteria 1 to 8; criterion 9 is that run's wall time and table. The
PASS/FAIL line for each criterion is listed in the run summary.
"""
import contextlib
import io
import json
import time

import pytest

from conecurve.checks import CRITERIA
from conecurve.cli import main

from conftest import CRITERION_LINES

TIME_LIMIT = 300.0  # seconds for the whole run
PER_CHECK_LIMIT = 10.0  # seconds for each gallery criterion; the randomized suite is exempt


@pytest.fixture(scope="module")
def check_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("acceptance") / "results.json"
    buf = io.StringIO()
    t = time.perf_counter()
    with contextlib.redirect_stdout(buf):
        code = main(["check-paper", "--cases", "1000", "--json", str(out)])
    wall = time.perf_counter() - t
    results = {r["number"]: r for r in json.loads(out.read_text())}
    return code, wall, buf.getvalue(), results


def _report(number, passed, title):
    line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title}"
    CRITERION_LINES.append(line)
    print("\n" + line)


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(check_run, number):
    _, _, _, results = check_run
    r = results[number]
    failed = [f"{c['label']}: {c['detail']}" for c in r["checks"] if not c["passed"]]
    timely = number == 7 or r["seconds"] < PER_CHECK_LIMIT
    _report(number, r["passed"] and timely, r["title"])
    assert r["checks"], "criterion recorded no checks"
    assert failed == []
    assert timely, f"took {r['seconds']:.1f} s"


def test_criterion_7_covers_a_thousand_cases(check_run):
    r = check_run[3][7]
    counts = [c for c in r["checks"] if c["label"].endswith("cases")]
    assert counts and all(c["passed"] for c in counts)


def test_criterion_9_check_paper(check_run):
    code, wall, table, results = check_run
    lines = table.strip().splitlines()
    rows = [ln for ln in lines[1:-1] if ln.strip()]
    ok = (code == 0 and wall < TIME_LIMIT and len(rows) == len(CRITERIA)
          and all(ln.split()[1] == "PASS" for ln in rows))
    _report(9, ok, f"check-paper end to end in {wall:.0f} s")
    assert lines[0].split()[:5] == ["#", "result", "seconds", "example", "criterion"]
    for ln, n in zip(rows, sorted(CRITERIA)):
        assert ln.split()[0] == str(n)
        # each row names the worked example it reproduces
        assert results[n]["example"] and results[n]["example"] in ln
    assert lines[-1].startswith(f"{len(CRITERIA)}/{len(CRITERIA)} criteria passed")
    assert wall < TIME_LIMIT
    assert code == 0

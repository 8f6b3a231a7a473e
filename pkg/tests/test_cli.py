import csv
import pytest
import io
import json
import subprocess
import sys
from fractions import Fraction

from eulerlab.cli import main
from eulerlab.hpreal import parse_decimal
from conftest import ZETA3_50


def run_cli(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_zeta3(capsys):
    code, out, _ = run_cli(["compute", "zeta", "3"], capsys)
    assert code == 0
    assert abs(parse_decimal(out.strip()) - parse_decimal(ZETA3_50)) < Fraction(1, 10 ** 28)


def test_compute_mzv_bar_notation(capsys):
    code, out, _ = run_cli(["compute", "mzv", "1", "~2"], capsys)
    assert code == 0
    expected = parse_decimal(ZETA3_50) / 8
    assert abs(parse_decimal(out.strip()) - expected) < Fraction(1, 10 ** 25)


def test_compute_hsum_star_matches_zeta3(capsys):
    code, out1, _ = run_cli(["compute", "hsum", "--star", "0", "0"], capsys)
    assert code == 0
    code, out2, _ = run_cli(["compute", "zeta", "3"], capsys)
    assert code == 0
    assert abs(parse_decimal(out1.strip()) - parse_decimal(out2.strip())) < Fraction(1, 10 ** 28)


def test_compute_depth3_mzv(capsys):
    code, out, _ = run_cli(["compute", "mzv", "2", "3", "2", "--digits", "12"], capsys)
    assert code == 0
    float(out.strip())


def test_compute_hyp(capsys):
    code, out, _ = run_cli(
        ["compute", "hyp", "--upper", "1,1/2", "--lower", "3/2", "--x", "-1", "--digits", "20"],
        capsys)
    assert code == 0
    pi_quarter = parse_decimal("0.785398163397448309615660845819875721")
    assert abs(parse_decimal(out.strip()) - pi_quarter) < Fraction(1, 10 ** 19)


def test_divergent_requests_exit_3(capsys):
    for args in (["compute", "zeta", "1"],
                 ["compute", "zeta", "0"],
                 ["compute", "mzv", "2", "1"]):
        code, _, err = run_cli(args, capsys)
        assert code == 3, args
        assert "reg" in err or "closed" in err  # names the regularized alternative


def test_usage_errors_exit_2(capsys):
    code, _, _ = run_cli(["compute", "mzv", "x"], capsys)
    assert code == 2
    code, _, _ = run_cli(["compute", "mzv", "~1", "2", "3"], capsys)
    assert code == 2  # bars beyond depth 2
    code, _, _ = run_cli(["table", "doublesums", "45"], capsys)
    assert code == 2


def test_unknown_suite_exits_2(capsys):
    code = main(["verify", "nonsense"])
    capsys.readouterr()
    assert code == 2


def test_verify_suite_json(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code, out, _ = run_cli(["verify", "stuffle", "--fast", "--json", str(report_path)], capsys)
    assert code == 0
    assert "pass" in out
    data = json.loads(report_path.read_text())
    assert data["suite"] == "stuffle"
    assert isinstance(data["wall_time_ms"], int)
    assert all(c["pass"] for c in data["cases"])
    for c in data["cases"]:
        # decimal strings, never binary floats
        parse_decimal(c["residual"])
        parse_decimal(c["tolerance"])
        assert abs(parse_decimal(c["lhs"]) - parse_decimal(c["rhs"])) <= \
            parse_decimal(c["tolerance"]) + Fraction(1, 10 ** 27)
    ids = [c["id"] for c in data["cases"]]
    assert ids == sorted(ids)


def test_verify_reports_deterministic(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(["verify", "stuffle", "--json", str(p1), "--jobs", "1"], capsys)[0] == 0
    assert run_cli(["verify", "stuffle", "--json", str(p2), "--jobs", "4"], capsys)[0] == 0
    a = json.loads(p1.read_text())
    b = json.loads(p2.read_text())
    assert a["cases"] == b["cases"]  # ordering and digits independent of pool


def test_table_doublesums_csv_roundtrip(capsys):
    code, out, _ = run_cli(["table", "doublesums", "5", "--format", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "r,s,bar_r,bar_s,value,route"
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 16  # 4 splits x 4 bar patterns
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=lines[0].split(","), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    assert buf.getvalue() == out  # byte-identical re-emission


def test_table_doublesums_even_weight_marks_divergent(capsys):
    code, out, _ = run_cli(["table", "doublesums", "4", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    divergent = [r for r in rows if r["route"] == "divergent"]
    assert divergent and all(r["value"] == "NA" for r in divergent)
    assert all(r["bar_s"] == "0" and r["s"] == "1" for r in divergent)


def test_table_hsums_json(capsys):
    code, out, _ = run_cli(["table", "hsums", "3", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    rows = data["rows"]
    assert len(rows) == 12  # a+b <= 2, both star flags
    z3 = next(r for r in rows if r["a"] == 0 and r["b"] == 0 and r["star"] == 0)
    assert abs(parse_decimal(z3["value"]) - parse_decimal(ZETA3_50)) < Fraction(1, 10 ** 28)


def test_console_script_entrypoint():
    proc = subprocess.run(
        [sys.executable, "-m", "eulerlab.cli", "compute", "zetabar", "1", "--digits", "20"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip().startswith("-0.6931471805599453094")


def test_precision_check_env_var():
    import os

    env = dict(os.environ, EULERLAB_PREC_CHECK="1")
    proc = subprocess.run(
        [sys.executable, "-c", "import eulerlab"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr


@pytest.mark.slow
def test_verify_all_fast_under_a_minute(capsys):
    import time

    start = time.monotonic()
    code, out, _ = run_cli(["verify", "all", "--fast"], capsys)
    elapsed = time.monotonic() - start
    assert code == 0
    assert elapsed < 60.0, elapsed
    assert "0 failed" in out


def test_verify_failure_exits_1(capsys, monkeypatch):
    from eulerlab import cli as cli_mod
    from eulerlab.verify import CaseResult, VerifyReport

    def fake_suite(name, fast=True, jobs=None):
        return VerifyReport(suite=name, cases=[
            CaseResult(id="made-up", lhs="1.0", rhs="0.0",
                       residual="1.0", tolerance="0.5", passed=False)
        ], wall_time_ms=1)

    monkeypatch.setattr(cli_mod, "run_suite", fake_suite)
    code, out, _ = run_cli(["verify", "stuffle"], capsys)
    assert code == 1
    assert "FAIL" in out

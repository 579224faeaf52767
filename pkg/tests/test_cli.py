import json
import subprocess
import sys

import pytest

from partineq.cli import main
from partineq.report import SCHEMA_VERSION, dump_json, load_report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute(capsys):
    assert run(capsys, "compute", "euler", "26")[:2] == (0, "2436\n")
    assert run(capsys, "compute", "mary:2", "0")[:2] == (0, "1\n")
    code, out, _ = run(capsys, "compute", "plane", "0..5")
    assert code == 0 and out.split() == ["1", "1", "3", "6", "13", "24"]
    code, out, _ = run(capsys, "compute", "plane", "0..2", "--format", "csv")
    assert out == "sequence,n,value\nplane,0,1\nplane,1,1\nplane,2,3\n"


def test_compute_big_values_are_strings(capsys):
    code, out, _ = run(capsys, "compute", "euler", "1000", "--format", "json", "--no-timing")
    rep = json.loads(out)
    assert rep["schema_version"] == SCHEMA_VERSION
    assert rep["results"][0]["values"][0]["value"] == "24061467864032622473692149727991"


@pytest.mark.parametrize("argv,code", [
    (["compute", "bogus", "3"], 2),
    (["compute", "euler", "x"], 2),
    (["compute", "euler", "-3"], 3),
    (["criterion", "nope"], 2),
    (["certify", "nowhere"], 2),
    (["scan", "bo", "euler", "--min", "10", "--sum-max", "12"], 2),
    (["audit", "prop42", "euler", "--n0", "26", "--max", "30"], 3),
])
def test_error_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["compute", "euler", "3", "--precision-cap", "32"])
    assert exc.value.code == 2


def test_scan_and_audit(capsys):
    code, out, _ = run(capsys, "scan", "bo", "euler", "--min", "2", "--sum-max", "100", "--format", "json", "--no-timing")
    rep = json.loads(out)["results"][0]
    assert code == 0 and rep["violation_count"] == 9
    assert all(sum(v["indices"]) <= 9 for v in rep["violations"])
    code, out, _ = run(capsys, "scan", "lc", "euler", "--max", "500")
    assert "min_clean_threshold=26" in out
    assert run(capsys, "audit", "cassini", "--max", "10000")[0] == 0
    assert run(capsys, "audit", "thm43", "fib-even", "--max", "40")[0] == 1
    assert run(capsys, "audit", "golden", "--max", "200", "--precision-cap", "128")[0] == 4
    code, out, _ = run(capsys, "audit", "bo-threshold", "euler", "--max", "100")
    assert "threshold=4" in out


def test_certify(capsys):
    assert run(capsys, "certify", "chen", "--max", "300")[0] == 0
    code, out, _ = run(capsys, "certify", "chen", "--min", "2", "--max", "60")
    assert code == 1 and "Refuted" in out
    assert run(capsys, "certify", "mahler", "--m", "2", "--min", "100", "--max", "200")[0] == 1


def test_criterion_report_round_trip(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(capsys, "criterion", "lc-chen", "--horizon", "200", "--format", "json",
                         "--no-timing", "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert dump_json(load_report(a.read_text())).encode() == a.read_bytes()
    code, out, _ = run(capsys, "report", str(a), "--format", "json")
    assert code == 0 and out.encode() == a.read_bytes()
    code, out, _ = run(capsys, "report", str(a), "--format", "csv")
    assert out.startswith("name,status,horizon_lo")


def test_timing_is_optional(capsys):
    _, out, _ = run(capsys, "audit", "cassini", "--max", "50", "--format", "json")
    assert "timing" in json.loads(out)
    _, out, _ = run(capsys, "audit", "cassini", "--max", "50", "--format", "json", "--no-timing")
    assert "timing" not in json.loads(out)


def test_config_criterion(capsys, tmp_path):
    cfg = tmp_path / "c.ini"
    cfg.write_text(
        "[criterion:mine]\ntype = bo\nsequence = euler\nenvelope = lehmer\n"
        "g = pi/12*sqrt(24*n - 1) - 1/24\nh = 2\nN1 = 1\nN2 = 9\nN3 = 22\nhorizon = 100\n"
    )
    code, out, _ = run(capsys, "criterion", "mine", "--config", str(cfg))
    assert code == 0 and "combined=22" in out


def test_bad_report_file(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"hello": 1}')
    assert run(capsys, "report", str(p))[0] == 2
    assert run(capsys, "report", str(tmp_path / "missing.json"))[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "partineq", "compute", "euler", "26"],
                         capture_output=True, text=True, check=True)
    assert out.stdout == "2436\n"

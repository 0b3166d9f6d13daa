import json
import subprocess
import sys

import pytest

from charscheme.analysis import scheme_report
from charscheme.cli import EXIT_ANOMALY, EXIT_OK, EXIT_USAGE, main, parse_args
from charscheme.presentation import parse_seifert


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_valid():
    cfg = parse_args(["analyze", "--seifert", "-1/2,-1/3,1/5"])
    assert cfg.command == "analyze" and cfg.seifert.p == (2, 3, 5) and cfg.seifert.q == (1, 1, 1)


@pytest.mark.parametrize("argv,msg", [
    (["analyze", "--seifert", "1/2,1/2,-1/2,1/7"], "three fibers"),
    (["analyze", "--seifert", "-1/2,-1/3,5/6"], "Euler number must be nonzero"),
    (["analyze", "--seifert", "2/4,1/3,1/5"], "lowest terms"),
    (["analyze", "--seifert", "a/2,1/3,1/5"], "malformed"),
    (["verify-suite", "--p-max", "1", "--q-max", "1"], "empty sweep"),
    (["census"], "--seifert"),
    (["frobnicate"], "invalid choice"),
])
def test_usage_errors(capsys, argv, msg):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert msg in err


def test_analyze_ok(capsys):
    code, out, _ = run(capsys, "analyze", "--seifert", "-1/2,-1/3,1/5")
    assert code == EXIT_OK
    assert "dim = 12" in out and "FAIL" not in out


def test_analyze_failing_checks_exit_2(capsys):
    # the printed count formula does not hold here, so a check is red
    code, out, _ = run(capsys, "analyze", "--seifert", "-1/3,-1/3,1/4")
    assert code == EXIT_ANOMALY
    assert "FAIL census_formula" in out


def test_json_roundtrip(capsys):
    code, out, _ = run(capsys, "analyze", "--seifert", "-1/3,-1/3,-1/3", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    rep = scheme_report(parse_seifert("-1/3,-1/3,-1/3"))
    assert data == json.loads(json.dumps(rep.to_json()))


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "analyze", "--seifert", "-1/3,-1/3,-1/3")
    _, js, _ = run(capsys, "analyze", "--seifert", "-1/3,-1/3,-1/3", "--format", "json")
    d = json.loads(js)
    c = d["census"]
    assert f"|H1| = {c['homology']['order']}" in text
    assert f"|X(M)| = {c['count_formula_lhs']}" in text
    assert f"x_M = {c['x_M']}" in text
    assert f"dim = {d['groebner_dim']}" in text
    assert f"reduced = {d['reduced']}" in text


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify-suite", "--p-max", "3", "--q-max", "1")
    assert code == EXIT_OK
    assert "10/10 manifolds pass" in out
    header = out.splitlines()[0].split()
    assert header == ["params", "|H1|", "|X(M)|", "x_M", "dim", "C[X]", "reduced?", "status"]


def test_verify_suite_json(capsys):
    code, out, _ = run(capsys, "verify-suite", "--p-max", "3", "--q-max", "1", "--format", "json",
                       "--skip-groebner")
    d = json.loads(out)
    assert d["failed"] == 0 and len(d["rows"]) == 10
    assert any(r["x_M"] > 0 and r["reduced"] is False for r in d["rows"])


def test_trace_and_ideal(capsys):
    code, out, _ = run(capsys, "trace", "--word", "c2 h^2 c1")
    assert code == EXIT_OK and out.strip() == "u*y3 - x3"
    code, out, _ = run(capsys, "trace", "--word", "h q")
    assert code == EXIT_USAGE
    code, out, _ = run(capsys, "ideal", "--seifert", "-1/2,-1/3,1/5", "--format", "json")
    assert len(json.loads(out)["generators"]) == 29
    code, out, _ = run(capsys, "ideal", "--seifert", "-1/2,-1/3,1/5", "--source", "generic")
    assert code == EXIT_OK and out.splitlines()[-1].startswith("F:")


def test_groebner_and_census(capsys, tmp_path):
    code, out, _ = run(capsys, "groebner", "--seifert", "-1/2,-1/3,1/5", "--dim")
    assert code == EXIT_OK and out.strip() == "dim = 12"
    code, out, err = run(capsys, "groebner", "--seifert", "1/3,-1/4,3/5", "--budget", "2")
    assert code == EXIT_ANOMALY and "budget" in err
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "census", "--seifert", "-1/2,-1/3,1/5", "--format", "json", "--output", str(path))
    assert code == EXIT_OK and out == ""
    d = json.loads(path.read_text())
    assert set(d) >= {"homology", "abelian", "irreducible", "x_M", "count_formula_lhs", "count_formula_rhs"}


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "charscheme", "census", "--seifert", "-1/2,1/3,1/5"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "|H1| = 1" in r.stdout

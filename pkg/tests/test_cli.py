import json

from orbitfactor import cli


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_factor_headline(capsys):
    code, out, _ = run_cli(capsys, "factor", "--p", "19", "--m", "1",
                           "--s", "(-x-1)/(x-1)", "--oracle-check")
    assert code == 0
    assert "T^4 + 6*T^3 + 13*T^2 + 13*T + 1" in out
    assert "oracle check: PASS" in out
    assert "reconstruction: PASS" in out


def test_factor_seventeen_unit(capsys):
    code, out, _ = run_cli(capsys, "factor", "--p", "17", "--m", "1",
                           "--s", "(14x+13)/(6x+2)")
    assert code == 0
    assert "unit: 6" in out
    assert "T^3 + 15*T + 7" in out


def test_classes_q3(capsys):
    code, out, _ = run_cli(capsys, "classes", "--p", "3", "--m", "1")
    assert code == 0
    assert "5 conjugacy classes" in out
    assert "split-involution" in out and "nonsplit-involution" in out


def test_classes_lambda_flag(capsys):
    code, out, _ = run_cli(capsys, "classes", "--p", "4", "--m", "1", "--lambda", "inf")
    assert code == 2  # 4 is not prime: propagated module error
    code, out, _ = run_cli(capsys, "classes", "--p", "2", "--m", "2", "--lambda", "inf")
    assert code == 0
    assert "identity" in out


def test_lambda_report(capsys):
    code, out, _ = run_cli(capsys, "lambda-report", "--p", "7", "--m", "1",
                           "--s", "(3x-1)/(x+3)")
    assert code == 0
    assert "degree   2: 1" in out and "degree   8: 4" in out
    assert "total: 7 = q" in out


def test_lang(capsys):
    code, out, _ = run_cli(capsys, "lang", "--p", "3", "--m", "1", "--s", "x+1")
    assert code == 0
    assert "verified" in out


def test_orbits(capsys):
    code, out, _ = run_cli(capsys, "orbits", "--p", "7", "--m", "1",
                           "--gens", "(3x-1)/(x+3)", "--ext", "1")
    assert code == 0
    assert "ramification audit" in out and "PASS" in out


def test_invariant_pgl(capsys):
    code, out, _ = run_cli(capsys, "invariant", "--p", "2", "--m", "1", "--pgl")
    assert code == 0
    assert "degree: 6" in out


def test_orbit_poly(capsys):
    code, out, _ = run_cli(capsys, "orbit-poly", "--p", "19", "--m", "1",
                           "--gens", "(-x-1)/(x-1)")
    assert code == 0
    assert "family:" in out


def test_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, "factor", "--p", "19", "--m", "1",
                           "--s", "(-x-1)/(x-1)", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "orbitfactor/1"
    assert json.dumps(doc, indent=2, sort_keys=True) == out.rstrip("\n")
    assert len(doc["factors"]) == 5


def test_json_stable_across_runs(capsys):
    _, first, _ = run_cli(capsys, "classes", "--p", "3", "--m", "1", "--json")
    _, second, _ = run_cli(capsys, "classes", "--p", "3", "--m", "1", "--json")
    assert first == second


def test_usage_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "factor", "--p", "19")
    assert code == 1
    assert "usage error" in err


def test_unknown_command_exit_code(capsys):
    code, _, err = run_cli(capsys, "not-a-command")
    assert code == 1


def test_module_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "lambda-report", "--p", "7", "--m", "1", "--s", "x+1")
    assert code == 2
    assert "WrongOrder" in err


def test_verify_suite_filtered(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "paper-examples", "--p", "19")
    assert code == 0
    assert "[PASS]" in out


def test_verify_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "lemmas", "--p", "3", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] == doc["total"] > 0

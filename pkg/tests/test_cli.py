import json
import subprocess
import sys

import pytest

from caentropy.cli import run

RULE90 = ["r=2", "span=-1..1", "coeffs=1,0,1"]
RULE150 = ["r=2", "span=-1..1", "coeffs=1,1,1"]


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(capsys, *argv):
    code, out, _ = invoke(capsys, *argv)
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    return data


def test_entropy_rate_rule150(capsys):
    data = as_json(capsys, "entropy", "rate", *RULE150)
    assert data["value_log2"] == pytest.approx(2.0, abs=1e-9)
    assert data["status"] == "converged"
    assert data["window"] == 1


def test_rule_info(capsys):
    data = as_json(capsys, "rule", "info", "r=4", "span=0..1", "coeffs=1,2")
    assert data["left_permutative"] and not data["right_permutative"]
    assert data["surjective"]


def test_rule_power_zero_is_identity(capsys):
    data = as_json(capsys, "rule", "power", "u=0", *RULE90)
    assert data["span"] == [0, 0] and data["coeffs"] == [1]


def test_rule_compose(capsys):
    data = as_json(capsys, "rule", "compose", "p=1", "q=1", *RULE90)
    assert data["span"] == [0, 2]


def test_simulate_text(capsys):
    code, out, _ = invoke(capsys, "simulate", *RULE90, "init=0,0,1,0,0", "steps=2",
                          "origin=-2", "--format", "text")
    assert code == 0
    assert out == "# left=-2\n00100\n 101\n  0\n"


def test_simulate_cyclic(capsys):
    data = as_json(capsys, "simulate", *RULE90, "init=1,0,0,0", "boundary=cyclic")
    assert data["rows"] == [[1, 0, 0, 0], [0, 1, 0, 1]]


def test_closed_form(capsys):
    data = as_json(capsys, "entropy", "closed-form", "r=3", "span=-1..1", "coeffs=2,1,2")
    assert data["closed_form"] and data["value_log2"] == pytest.approx(2 * 1.584962500721156)
    data = as_json(capsys, "entropy", "closed-form", "r=2", "span=0..1", "coeffs=1,1")
    assert not data["closed_form"] and data["value_log2"] == pytest.approx(1.0)


def test_conditional(capsys):
    data = as_json(capsys, "entropy", "conditional", *RULE90, "alpha=0@1", "beta=-1@0,1@0")
    assert data["value_nats"] == 0
    data = as_json(capsys, "entropy", "conditional", *RULE90, "alpha=0@0", "beta=0@-1")
    assert data["time_offset"] == 1
    assert data["value_log2"] == pytest.approx(1.0)


def test_directional(capsys):
    data = as_json(capsys, "directional", "p=3", "q=2", *RULE90)
    assert data["value_log2"] == pytest.approx(5.0)
    data = as_json(capsys, "directional", "p=-2", "q=0", *RULE90)
    assert data["value_log2"] == pytest.approx(2.0)


def test_direction_limit_csv(capsys):
    code, out, _ = invoke(capsys, "direction-limit", "terms=1,1,1,1,1", *RULE90, "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "i,m_i,n_i,c_i"
    assert [line.split(",")[1:3] for line in lines[1:]] == [
        ["1", "1"], ["2", "1"], ["3", "2"], ["5", "3"], ["8", "5"]]


def test_direction_limit_rational(capsys):
    data = as_json(capsys, "direction-limit", "omega=3/2", "--depth", "3", *RULE90)
    assert data["convergents"] == [[3, 2], [6, 4], [9, 6]]
    assert max(data["c_values"]) - min(data["c_values"]) < 1e-12


def test_rl_entropy(capsys):
    data = as_json(capsys, "rl-entropy", *RULE90, "a=0", "omega=1", "--depth", "2", "--width", "3")
    assert data["right_nats"] == pytest.approx(2 * 0.6931471805599453)
    assert data["left_nats"] == pytest.approx(2 * 0.6931471805599453)
    assert data["time_offset"] == 2


def test_verify_thm34_with_negative_dirs(capsys):
    data = as_json(capsys, "verify", "thm34", *RULE90, "--dirs", "0,1", "1,1", "-2,1", "--umax", "3")
    assert data["passed"] and len(data["reports"]) == 3


@pytest.mark.parametrize("suite", ["thm33", "lemma21", "lemma31", "thm32"])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = invoke(capsys, "verify", suite, "--format", "text")
    assert code == 0
    assert out.startswith(f"PASS {suite}")


def test_verify_failure_exit_code(capsys):
    # Not bipermutative: the rate does not reach converged status.
    code, out, _ = invoke(capsys, "verify", "thm33", "r=4", "span=0..1", "coeffs=1,2")
    assert code == 2
    assert json.loads(out)["passed"] is False


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["entropy", "rate"],
    ["entropy", "rate", *RULE90, "extra=1"],
    ["rule", "power", *RULE90],
    ["rule", "power", "u=-1", *RULE90],
    ["directional", "p=0", "q=0", *RULE90],
    ["verify", "nope"],
    ["entropy", "rate", *RULE90, "--format", "xml"],
    ["direction-limit", *RULE90],
])
def test_usage_errors(capsys, argv):
    code, _, err = invoke(capsys, *argv)
    assert code == 1
    assert "error" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "rate.json"
    code, out, _ = invoke(capsys, "entropy", "rate", *RULE150, "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["value_log2"] == pytest.approx(2.0)


def test_repeat_runs_identical(capsys):
    argv = ["direction-limit", "terms=1,1,1,1", *RULE90]
    first = invoke(capsys, *argv)
    second = invoke(capsys, *argv)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "caentropy", "entropy", "rate", *RULE150],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["value_log2"] == pytest.approx(2.0)

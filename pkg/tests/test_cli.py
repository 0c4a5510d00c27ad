import json
import subprocess
import sys

import pytest

from schubmin.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    assert doc["schema"] == 1
    return code, doc


def test_lr(capsys):
    code, out, _ = run(capsys, "lr", "[3,2,2,2]", "[4,3,1]", "[5,4,3,2,2,1]")
    assert code == 0 and "c = 4" in out and "models agree" in out
    code, doc = run_json(capsys, "lr", "[1]", "[1]", "[2]")
    assert code == 0 and doc["coefficient"] == 1
    code, doc = run_json(capsys, "lr", "[1]", "[1]", "[3]")
    assert code == 0 and doc["coefficient"] == 0


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--phi", "12,6,3,3,3,3,4", "--nu", "[3,3,3,3,1]")
    assert code == 0 and "Reduce = -(1⊗s̄[2,1,1])" in out and "OK" in out
    code, doc = run_json(capsys, "reduce", "--phi", "4,2,1,1,1,1,1", "--nu", "[1,1]")
    assert code == 0 and doc["result"] == "(1⊗s̄[1])"
    code, _, err = run(capsys, "reduce", "--phi", "12,6,3,3,3,3,4", "--nu", "[4,3,3,2,1]")
    assert code == 4 and "wide" in err


def test_reduce_trace_and_random_order(capsys):
    code, doc = run_json(capsys, "reduce", "--phi", "12,6,3,3,3,3,4", "--nu", "[3,3,3,3,1]", "--trace")
    assert doc["trace"][0]["index"] == 0 and len(doc["trace"]) == doc["steps"] + 1
    code, doc2 = run_json(capsys, "reduce", "--phi", "12,6,3,3,3,3,4", "--nu", "[3,3,3,3,1]",
                          "--order", "random", "--seed", "11")
    assert code == 0 and doc2["result"] == doc["result"]


def test_system(capsys):
    code, out, _ = run(capsys, "system", "--phi", "12,6,3,3,3,3,4")
    assert code == 0
    assert "nu=[3,3,3,3,1]: A_{[],[3,1]} + A_{[1],[3]} + A_{[1],[2,1]} + A_{[2],[2]}" in out
    code, doc = run_json(capsys, "system", "--phi", "4,2,1,1,1,1,1")
    assert code == 0 and len(doc["rows"]) == 2 and doc["variables"] == ["A_{[],[1]}"]
    code, _, err = run(capsys, "system", "--phi", "12,6,3,3,4,3,4")
    assert code == 3 and "a+j<=r" in err


def test_check_minimality(capsys):
    code, doc = run_json(capsys, "check-minimality", "--bigrassmannian", "2,2,2,4")
    assert code == 0 and doc["all_essential"] and len(doc["verdicts"]) == 2
    code, out, _ = run(capsys, "check-minimality", "--phi", "12,6,3,3,3,3,4")
    assert code == 0 and "True" in out and "tall [3,3,3,3,1] = " in out


def test_check_minimality_six_six(capsys):
    code, doc = run_json(capsys, "check-minimality", "--bigrassmannian", "6,6,4,12", "--threads", "2")
    assert code == 0 and doc["all_essential"] and len(doc["verdicts"]) == 20


def test_generators(capsys):
    code, doc = run_json(capsys, "generators", "--bigrassmannian", "4,4,3,8")
    assert code == 0 and doc["count"] == 6


def test_bruhat_commands(capsys):
    code, out, _ = run(capsys, "essential-set", "[4,3,2,1]")
    assert code == 0 and out.strip() == "∅"
    code, out, _ = run(capsys, "essential-set", "[1,2,3]")
    assert out.strip() == "{[1,3,2], [2,1,3]}"
    code, doc = run_json(capsys, "find-w", "--v", "[1,3,2,4]", "--n", "4")
    assert code == 0 and doc["w"] == ["[2,1,4,3]"] and doc["set_equality_verified"]
    code, _ = run_json(capsys, "find-w", "--v", "[1,2,3]")
    assert code == 1


@pytest.mark.parametrize("argv, expected", [
    (["lr", "[a]", "[1]", "[1]"], 2),
    (["reduce", "--phi", "1,2,3", "--nu", "[1]"], 2),
    (["essential-set", "[1,1]"], 2),
    (["nonsense"], 2),
    (["check-minimality", "--bigrassmannian", "2,2,0,4"], 3),
    (["check-minimality", "--bigrassmannian", "10,10,6,20"], 5),
    (["essential-set", "[1,2,3,4,5,6,7,8]"], 5),
    (["reduce", "--phi", "12,6,3,3,3,3,4", "--nu", "[3,3,3]"], 4),
])
def test_exit_codes(capsys, argv, expected):
    assert run(capsys, *argv)[0] == expected


def test_force_prints_warning(capsys):
    code, _, err = run(capsys, "check-minimality", "--bigrassmannian", "2,2,2,4", "--force")
    assert code == 0 and "warning" in err


def test_verify_command(capsys):
    code, doc = run_json(capsys, "verify-paper")
    assert code == 0 and doc["anchors"] and all(a["pass"] for a in doc["anchors"])


@pytest.mark.parametrize("argv", [
    ["check-minimality", "--bigrassmannian", "4,4,3,8"],
    ["system", "--phi", "12,6,3,3,3,3,4"],
    ["reduce", "--phi", "12,6,3,3,3,3,4", "--nu", "[3,3,3,3,1]", "--order", "random", "--seed", "3", "--trace"],
])
def test_json_is_byte_identical_across_processes(argv):
    cmd = [sys.executable, "-m", "schubmin", *argv, "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first

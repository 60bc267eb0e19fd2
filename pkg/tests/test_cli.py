import json
import subprocess
import sys

import pytest

from csf.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, parse_parts, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "values, basis, expected",
    [
        ("2,3,4,4", "s", "8 s[4] + 4 s[3,1] + 2 s[2,2]"),
        ("2,3,4,4", "h", "4 h[4] + 2 h[3,1] + 2 h[2,2]"),
        ("2,3,4,4", "e", "4 e[4] + 2 e[3,1] + 2 e[2,2]"),
        ("3,3,3", "e", "6 e[3]"),
        ("1,3,4,4", "m", "1 m[3,1] + 2 m[2,2] + 8 m[2,1,1] + 24 m[1,1,1,1]"),
    ],
)
def test_expand(capsys, values, basis, expected):
    code, out, _ = run(capsys, "expand", "--f", values, "--basis", basis)
    assert code == EXIT_OK and out.strip() == expected


def test_expand_graded(capsys):
    code, out, _ = run(capsys, "expand", "--f", "1,3,4,4", "--basis", "e", "--t")
    assert code == EXIT_OK and out.strip() == "(1 + t + t^2) e[3,1] + (t) e[2,1,1]"


def test_expand_json(capsys):
    code, out, _ = run(capsys, "expand", "--f", "3,3,3", "--basis", "h", "--json")
    data = json.loads(out)
    assert data["basis"] == "h" and data["terms"] == [{"partition": [3], "coeff": 6}]


def test_list(capsys, tmp_path):
    out_file = tmp_path / "fs.json"
    code, out, _ = run(capsys, "list", "--n", "4", "--out", str(out_file))
    assert code == EXIT_OK and out.strip().endswith("14 functions")
    assert len(json.loads(out_file.read_text())["functions"]) == 14
    code, out, _ = run(capsys, "list", "--n", "4", "--bounce", "2")
    assert "2,3,4,4" in out and "1,2,3,4" not in out


def test_tableaux(capsys):
    code, out, _ = run(capsys, "tableaux", "--f", "2,3,4,4", "--shape", "2,2")
    assert out.splitlines() == ["1,2;3,4", "2,1;4,3", "2 tableaux of shape [2, 2]"]
    code, _, err = run(capsys, "tableaux", "--f", "2,3,4,4", "--shape", "2,1")
    assert code == EXIT_USAGE and "not a partition of n=4" in err


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "--f", "1,3,4,4")
    assert code == EXIT_OK and "PASS" in out.splitlines()[0]
    code, out, _ = run(capsys, "verify", "--f", "1,2,3,4,5", "--json")
    assert code == EXIT_OK and json.loads(out)["scope"] == "oracle-only"


def test_verify_range(capsys, tmp_path):
    target = tmp_path / "cert.json"
    code, out, _ = run(capsys, "verify", "--n", "5", "--bounce", "3", "--out", str(target))
    assert code == EXIT_OK and "0 failures" in out
    first = target.read_text()
    run(capsys, "verify", "--n", "5", "--bounce", "3", "--out", str(target))
    assert target.read_text() == first
    assert json.loads(first)["summary"]["failures"] == 0


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", "--f", "1,3,4,4", "--mu", "3,1")
    data = json.loads(out)
    assert code == EXIT_OK and data["residual_count"] == 3 == data["signed_sum"]
    code, out, _ = run(capsys, "trace", "--f", "1,3,4,4", "--mu", "3,1", "--brief")
    assert "pairings" not in json.loads(out)


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["verify", "--n", "0"], "at least 1"),
        (["expand", "--f", "2,x,4"], "position 3"),
        (["expand", "--f", "1,1"], "--f"),
        (["trace", "--f", "1,2,3,4", "--mu", "2,1,1"], "bounce"),
        (["trace", "--f", "1,2,3,4", "--mu", "1,1,1,1"], "three parts"),
        (["trace", "--f", "1,2,3", "--mu", "1,2"], "not a partition"),
        (["verify", "--n", "10"], "budget"),
    ],
)
def test_usage_errors(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and fragment in err


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CSF_BUDGET", "3")
    code, _, err = run(capsys, "verify", "--n", "4")
    assert code == EXIT_USAGE and "budget" in err


def test_argparse_errors_exit_two(capsys):
    assert main(["expand"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE


def test_parse_parts():
    assert parse_parts("3, 1", "--mu") == (3, 1)
    with pytest.raises(UsageError):
        parse_parts("1,3", "--mu")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "csf", "expand", "--f", "1,2", "--basis", "e"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1 e[1,1]"


def test_failure_code_constant():
    assert EXIT_FAIL == 1

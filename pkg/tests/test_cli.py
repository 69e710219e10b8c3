import csv
import io
import json
import subprocess
import sys

import pytest

from padic_ode_lab.cli import main


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "padic_ode_lab", *args], capture_output=True, text=True, env=env)


def test_derive_k3(capsys):
    assert main(["derive", "--k", "3"]) == 0
    out = capsys.readouterr().out
    assert "U_3 = x^3 - 7*x^2 + 6*x - 1" in out
    assert "V_2 = -3*x^2 + 5*x - 1" in out


def test_derive_prop1(capsys):
    assert main(["derive", "--prop1", "x^2; x-1; -1; 1"]) == 0
    out = capsys.readouterr().out
    assert "(x^3 - x^2)*w' + (2*x^2 - 4*x + 1)*w = 1" in out
    assert "status: verified" in out


def test_derive_prop1_with_solution(capsys):
    assert main(["derive", "--prop1", "x^2; 2*x-1; -1; 2", "--solution", "n+1"]) == 0
    assert "status: verified" in capsys.readouterr().out


def test_derive_prop1_wrong_solution_is_a_discrepancy(capsys):
    assert main(["derive", "--prop1", "x^2; x-1; -1; 1", "--solution", "n"]) == 1
    out = capsys.readouterr().out
    assert "warning" in out and "status: discrepancy" in out


def test_derive_euler_lagrange(capsys):
    assert main(["derive", "--euler-lagrange", "example_6_5"]) == 0
    assert capsys.readouterr().out.strip() == "t^4*q'' + 2*t^3*q' + (2*t - 1)*q = t - 1"


def test_derive_euler_lagrange_file(tmp_path, capsys):
    f = tmp_path / "osc.json"
    f.write_text(json.dumps({"terms": {"qdot^2": "1/2", "q^2": "-1/2"}}))
    assert main(["derive", "--euler-lagrange", str(f)]) == 0
    assert capsys.readouterr().out.strip() == "q'' + q = 0"


def test_derive_shift(capsys):
    assert main(["derive", "--shift", "3"]) == 0
    out = capsys.readouterr().out
    assert "x^2*w' + (-2*x - 1)*w = -x^3" in out and "status: verified" in out


@pytest.mark.parametrize(
    "args, needle",
    [
        (["derive", "--prop1", "x^2; 2x; -1; 1"], "position 1"),
        (["derive", "--prop1", "x^2; 1; -1; 1"], "B' = 0"),
        (["derive", "--prop1", "x^2; x-1; 1"], "4 ';'-separated"),
        (["derive", "--euler-lagrange", "/nonexistent.json"], "cannot read"),
        (["eval", "--series", "1", "--x", "1/5", "--p", "5"], "outside Z_5"),
        (["eval", "--series", "n^", "--x", "1", "--p", "5"], "position"),
    ],
)
def test_input_errors_exit_2(args, needle, capsys):
    assert main(args) == 2
    assert needle in capsys.readouterr().err


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--format", "yaml"],
        ["verify", "--primes", "2,4"],
        ["verify", "--prec", "0"],
        ["eval", "--series", "1", "--x", "1", "--p", "9"],
        ["derive"],
    ],
)
def test_usage_errors_exit_2(args):
    with pytest.raises(SystemExit) as info:
        main(args)
    assert info.value.code == 2


def test_eval_examples(capsys):
    assert main(["eval", "--series", "1", "--x", "1", "--p", "5", "--prec", "2"]) == 0
    assert "value: 14 mod 5^2" in capsys.readouterr().out
    assert main(["eval", "--series", "n+2", "--x", "-1", "--p", "7", "--prec", "20"]) == 0
    out = capsys.readouterr().out
    assert "value: 1 mod 7^20" in out and "valuation: 0" in out
    assert main(["eval", "--series", "n^5+203", "--x", "-1", "--p", "3", "--prec", "20"]) == 0
    assert "value: 121 mod 3^20" in capsys.readouterr().out


def test_verify_json_is_deterministic(tmp_path):
    a = run("verify", "--suite", "sums", "--primes", "3,5", "--prec", "20", "--format", "json")
    b = run("verify", "--suite", "sums", "--primes", "5,3", "--prec", "20", "--format", "json",
            env={"PADIC_LAB_THREADS": "1", "PATH": ""})
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    data = json.loads(a.stdout)
    assert data["schema"] == "padic-ode-lab/1"
    keys = [i["key"] for i in data["items"]]
    assert len(keys) == len(set(keys))
    assert "(5.7)[k=5,p=3]" in keys


def test_verify_out_and_csv(tmp_path):
    out = tmp_path / "r.csv"
    r = run("verify", "--suite", "sums", "--primes", "2", "--prec", "10", "--format", "csv", "--out", str(out))
    assert r.returncode == 0 and r.stdout == ""
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert rows and {row["status"] for row in rows} <= {"verified", "value-match"}


def test_verify_catalog_passes_and_reports_3_18():
    r = run("verify", "--suite", "catalog", "--order", "60", "--primes", "3", "--format", "json")
    assert r.returncode == 0
    items = json.loads(r.stdout)["items"]
    assert all(i["status"] == "verified" for i in items)
    assert [i for i in items if i["key"].startswith("(3.18)")]


def test_verify_bernoulli_exit_code_reflects_alternating_k2():
    r = run("verify", "--suite", "bernoulli", "--primes", "2,3,5", "--prec", "15", "--format", "json")
    data = json.loads(r.stdout)
    by_key = {i["key"]: i for i in data["items"]}
    for p in (2, 3, 5):
        for k in range(1, 6):
            assert by_key[f"B-sum[k={k},p={p}]"]["status"] == "value-match"
        assert by_key[f"alt-B-sum[k=1,p={p}]"]["status"] == "value-match"
        assert by_key[f"alt-B-sum[k=2,p={p}]"]["status"] == "discrepancy"
    assert by_key["bernoulli-recurrence-index"]["known_flag"]
    # the alternating k = 2 value is not a known flag, so the run fails
    assert r.returncode == 1
    assert data["summary"]["unexpected_discrepancies"] == [f"alt-B-sum[k=2,p={p}]" for p in (2, 3, 5)]

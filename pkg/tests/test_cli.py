import csv
import io
import json

import pytest

from trichebyshev.cli import compile_function, main, parse_gamma, UsageError
from trichebyshev.bernstein import BaryPoint


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_coeffs_examples(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "1", "--r", "0")
    assert code == 0
    assert rows(out) == [["i", "j", "k", "value"], ["1", "0", "0", "1"], ["0", "1", "0", "1"], ["0", "0", "1", "-2"]]
    code, out, _ = run(capsys, "coeffs", "--n", "0", "--r", "0")
    assert rows(out)[1:] == [["0", "0", "0", "1"]]


def test_coeffs_rational_strings(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "3", "--r", "2", "--format", "json")
    obj = json.loads(out)
    assert obj["n"] == 3 and obj["r"] == 2 and obj["degree"] == 3
    assert all(isinstance(e["value"], str) for e in obj["coeffs"])
    assert any("/" in e["value"] for e in obj["coeffs"])


@pytest.mark.parametrize("argv", [("--n", "1", "--r", "2"), ("--n", "21", "--r", "0"), ("--n", "2")])
def test_coeffs_bad_indices(capsys, argv):
    code, out, err = run(capsys, "coeffs", *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_eval_grid(capsys):
    code, out, _ = run(capsys, "eval-grid", "--n", "0", "--r", "0", "--resolution", "2")
    assert code == 0
    table = rows(out)
    assert len(table) == 4 and all(float(r[3]) == 1.0 for r in table[1:])
    code, out, _ = run(capsys, "eval-grid", "--n", "1", "--r", "1", "--resolution", "2")
    values = {tuple(map(float, r[:3])): float(r[3]) for r in rows(out)[1:]}
    assert values == {(1.0, 0.0, 0.0): 1.0, (0.0, 1.0, 0.0): -1.0, (0.0, 0.0, 1.0): 0.0}


@pytest.mark.parametrize("res", [2, 3, 5, 11])
def test_eval_grid_row_count(capsys, res):
    _, out, _ = run(capsys, "eval-grid", "--n", "2", "--r", "1", "--resolution", str(res))
    assert len(rows(out)) - 1 == res * (res + 1) // 2


def test_eval_grid_resolution_guard(capsys):
    code, _, _ = run(capsys, "eval-grid", "--n", "2", "--r", "1", "--resolution", "1")
    assert code == 2


def test_gram_exact_and_quadrature(capsys):
    code, out, _ = run(capsys, "gram", "--n", "1", "--gamma", "1")
    table = rows(out)
    assert code == 0 and table[0] == ["m", "r", "m2", "s", "rat_part", "pi_part", "float_value"]
    assert table[1][4:6] == ["0", "1/2"]
    code, out, _ = run(capsys, "gram", "--n", "1", "--gamma", "0.5", "--format", "json")
    obj = json.loads(out)
    assert obj["mode"] == "quadrature" and len(obj["entries"]) == 9


def test_verify_gamma1_n4(capsys):
    code, out, _ = run(capsys, "verify", "--n", "4", "--gamma", "1")
    report = json.loads(out)
    status = {c["claim"]: c["status"] for c in report["checks"]}
    assert status["orthogonal_to_lower_degree"] == "pass"
    assert status["same_degree_orthogonality"] == "pass"
    assert status["q_moment_orthogonality"] == "pass"
    assert status["half_binomial_identity"] == "pass"
    assert status["bb_form_equals_factored_form"] == "pass"
    # the layer recursion only reproduces the closed form for r <= 1
    assert status["closed_form_equals_recursion"] == "fail"
    assert code == 1


def test_verify_gamma0_flags_outside_hypothesis(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--gamma", "0")
    report = json.loads(out)
    check = next(c for c in report["checks"] if c["claim"] == "orthogonal_to_lower_degree")
    assert check["status"] == "outside_hypothesis" and check["failures"] > 0
    assert not check["hypothesis_holds"]
    assert code == (0 if report["all_pass"] else 1)


def test_verify_r_le_1_range_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1", "--gamma", "1")
    assert code == 0 and json.loads(out)["all_pass"]


@pytest.mark.parametrize("argv", [("--n", "25", "--gamma", "1"), ("--n", "2", "--gamma", "0.5"), ("--n", "2", "--gamma", "3/2")])
def test_verify_usage_errors(capsys, argv):
    code, _, _ = run(capsys, "verify", *argv)
    assert code == 2


def test_project_cli(capsys, tmp_path):
    path = tmp_path / "p.json"
    code, out, _ = run(capsys, "project", "--n", "2", "--f", "u*v", "--out", str(path))
    assert code == 0 and out == ""
    obj = json.loads(path.read_text())
    assert obj["degree"] == 2 and obj["residual_norm"] <= 1e-10
    code, _, _ = run(capsys, "project", "--n", "2", "--f", "u", "--gamma", "0.5")
    assert code == 2


def test_parse_gamma():
    from fractions import Fraction

    assert parse_gamma("2") == 2 and isinstance(parse_gamma("2"), Fraction)
    assert parse_gamma("3/2") == Fraction(3, 2)
    assert parse_gamma("1.5") == 1.5 and isinstance(parse_gamma("1.5"), float)
    with pytest.raises(UsageError):
        parse_gamma("abc")


def test_compile_function():
    f = compile_function("exp(u) + sin(pi*v) * w**2")
    assert f(BaryPoint(0.0, 0.5, 0.5)) == pytest.approx(1 + 0.25)
    for bad in ("__import__('os')", "u.real", "open('x')", "[u]"):
        with pytest.raises(UsageError):
            compile_function(bad)


def test_out_file_is_lf_utf8(capsys, tmp_path):
    path = tmp_path / "c.csv"
    main(["coeffs", "--n", "2", "--r", "1", "--out", str(path)])
    data = path.read_bytes()
    assert b"\r" not in data and data.endswith(b"\n")

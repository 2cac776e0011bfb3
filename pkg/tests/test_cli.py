from __future__ import annotations

import json

import pytest

from umbral_lab.cli import main, normalize_argv


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("UMBRAL_LAB_BUDGET", "UMBRAL_LAB_PRECISION", "UMBRAL_LAB_WORKERS", "UMBRAL_LAB_LOG_LEVEL", "UMBRAL_LAB_LOG_FILE"):
        monkeypatch.delenv(name, raising=False)


def run_json(capsys, *argv):
    code = main([*argv, "--output", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_numbers_first_value(capsys):
    code, data = run_json(capsys, "numbers", "--q", "2/3", "--zeta", "3/5", "--n-max", "0")
    assert code == 0
    assert data["numbers"] == ["25/21"]
    assert data["weight"] == {"q": "2/3", "zeta": "3/5"}


def test_poly_classical(capsys):
    code, data = run_json(capsys, "poly", "--n-max", "2")
    assert code == 0
    assert data["polynomials"] == [["1"], ["-1/2", "1"], ["0", "-1", "1"]]


def test_verify_classical_weight(capsys):
    code, data = run_json(capsys, "verify", "--q", "1", "--zeta", "1", "--n-max", "10")
    assert code == 0
    assert data["checks"]
    assert all(c["status"] == "pass" for c in data["checks"])
    assert data["numbers"][0]["numbers"][1] == "-1/2"
    identities = {c["identity"] for c in data["checks"]}
    assert {"theorem1", "functional_equation", "distribution", "scaling", "classical_E2"} <= identities


def test_verify_default_panel(capsys):
    code, data = run_json(capsys, "verify", "--n-max", "4", "--d", "1,3", "--k", "1,2")
    assert code == 0
    assert len(data["numbers"]) == 5


def test_order_k(capsys):
    code, data = run_json(capsys, "order-k", "--q", "2/3", "--zeta", "3/5", "--n-max", "6", "--k", "1,2,3")
    assert code == 0
    assert [t["order"] for t in data["tables"]] == [1, 2, 3]
    assert all(r["status"] == "pass" for r in data["convolution"])


def test_zeta_default_weight_converges(capsys):
    code, data = run_json(capsys, "zeta", "--moment", "2")
    assert code == 0
    assert data["status"] == "pass"
    assert [r["M"] for r in data["rows"]] == [10, 20, 30, 40]
    assert data["s"] == -2


def test_zeta_without_convergence_fails(capsys):
    code, data = run_json(capsys, "zeta", "--q", "1", "--zeta", "1", "--moment", "1")
    assert code == 1
    assert data["status"] == "fail"


def test_padic_csv(capsys):
    code = main(["padic", "--p", "3", "--q", "4", "--zeta", "7", "--moment", "2", "--levels", "1..6", "--output", "csv"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert code == 0
    assert lines[0] == "level,valuation"
    assert [int(line.split(",")[0]) for line in lines[1:]] == [1, 2, 3, 4, 5, 6]
    vals = [int(line.split(",")[1]) for line in lines[1:]]
    assert vals == sorted(vals)


def test_padic_default_weight_json(capsys):
    code, data = run_json(capsys, "padic", "--p", "3", "--levels", "1..4")
    assert code == 0
    assert (data["q"], data["zeta"]) == ("4", "7")
    assert [r["valuation"] for r in data["lemma1"]] == [2, 3, 4, 5]


def test_pretty_output(capsys):
    assert main(["numbers", "--n-max", "3"]) == 0
    assert "-1/2" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["numbers", "--q", "0.5", "--zeta", "1"], 2),
        (["numbers", "--q", "1"], 2),
        (["numbers", "--n-max", "5", "--precision", "3"], 2),
        (["verify", "--d", "2"], 2),
        (["padic", "--levels", "1..3"], 2),
        (["numbers", "--q", "-1", "--zeta", "2"], 3),
        (["padic", "--p", "3", "--q", "2", "--zeta", "7", "--levels", "1..3"], 3),
        (["padic", "--p", "3", "--levels", "1..8", "--budget", "100"], 4),
        (["padic", "--p", "9", "--q", "10", "--zeta", "19", "--levels", "1..2"], 5),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    assert "error:" in capsys.readouterr().err


def test_budget_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("UMBRAL_LAB_BUDGET", "100")
    assert main(["padic", "--p", "3", "--levels", "1..6"]) == 4
    capsys.readouterr()


def test_bad_environment(monkeypatch, capsys):
    monkeypatch.setenv("UMBRAL_LAB_PRECISION", "abc")
    assert main(["numbers"]) == 2
    capsys.readouterr()


def test_log_file(monkeypatch, tmp_path, capsys):
    log = tmp_path / "logs" / "run.log"
    monkeypatch.setenv("UMBRAL_LAB_LOG_FILE", str(log))
    monkeypatch.setenv("UMBRAL_LAB_LOG_LEVEL", "info")
    assert main(["numbers", "--n-max", "2"]) == 0
    capsys.readouterr()
    text = log.read_text(encoding="utf-8")
    assert text.startswith("[")
    assert "run numbers" in text


@pytest.mark.parametrize("zeta", [["--zeta", "-1/5"], ["--zeta=-1/5"]])
def test_negative_rational_weight(capsys, zeta):
    code, data = run_json(capsys, "numbers", "--q", "3", *zeta, "--n-max", "1")
    assert code == 0
    assert data["weight"] == {"q": "3", "zeta": "-1/5"}


def test_normalize_argv():
    argv = ["zeta", "--x0", "-2/3", "--alpha", "-1,2", "--q", "1/2", "--levels", "1..3"]
    assert normalize_argv(argv) == ["zeta", "--x0=-2/3", "--alpha=-1,2", "--q", "1/2", "--levels", "1..3"]
    assert normalize_argv(["numbers", "--q", "--zeta", "1"]) == ["numbers", "--q", "--zeta", "1"]


def test_verify_needs_positive_precision(capsys):
    assert main(["verify", "--q", "2/3", "--zeta", "3/5", "--n-max", "0", "--precision", "0"]) == 2
    assert "error:" in capsys.readouterr().err
    code, data = run_json(capsys, "verify", "--q", "2/3", "--zeta", "3/5", "--n-max", "0", "--precision", "1")
    assert code == 0
    assert data["checks"]


def test_padic_levels_sorted_and_deduplicated(capsys):
    code, data = run_json(capsys, "padic", "--p", "3", "--levels", "3,1,2,3")
    assert code == 0
    assert [r["level"] for r in data["rows"]] == [1, 2, 3]
    assert [r["valuation"] for r in data["rows"]] == [2, 3, 4]


def test_csv_has_single_trailing_newline(capsys):
    assert main(["numbers", "--n-max", "2", "--output", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.endswith("\n") and not out.endswith("\n\n")

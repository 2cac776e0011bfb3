from __future__ import annotations

from fractions import Fraction

from umbral_lab.numbers import QWeight
from umbral_lab.verify import DEFAULT_WEIGHTS, SuiteParams, _Rows, run_suite, verify_weight

PARAMS = SuiteParams(n_max=6, precision=8, d_list=(1, 3), alpha_list=(Fraction(2), Fraction(-1, 2)), k_list=(1, 2))


def test_panel_is_valid_and_distinct():
    assert len(set(DEFAULT_WEIGHTS)) == 5
    assert QWeight(1, 1) in DEFAULT_WEIGHTS


def test_single_weight_passes_everything():
    rows, table = verify_weight(QWeight(Fraction(-3, 7), Fraction(5, 2)), PARAMS)
    assert rows
    assert all(r.status == "pass" for r in rows)
    assert all(r.lhs is None and r.rhs is None for r in rows)
    assert table.n_max == 6


def test_suite_covers_every_identity():
    report = run_suite([QWeight(1, 1)], PARAMS)
    assert report.ok
    names = {c.identity for c in report.checks}
    assert names >= {
        "appell_property",
        "binomial_relation",
        "theorem1",
        "operator_form",
        "shift_recurrence",
        "functional_equation",
        "integral_number",
        "integral_polynomial",
        "order_k_binomial",
        "order_k_lowering",
        "order_k_convolution",
        "order_k_integral",
        "distribution",
        "scaled_distribution",
        "scaling",
        "sheffer_identity",
        "sheffer_identity_swapped",
        "addition_formula",
        "biorthogonality",
        "multinomial",
        "classical_E1",
        "classical_E2",
    }


def test_parallel_suite_matches_sequential():
    weights = list(DEFAULT_WEIGHTS[1:3])
    assert run_suite(weights, PARAMS, workers=2) == run_suite(weights, PARAMS, workers=1)


def test_failed_row_carries_both_sides():
    rows = _Rows(QWeight(2, 3))
    rows.sides("demo", "n=1", Fraction(1, 2), Fraction(1, 3))
    rows.sides("demo", "n=2", 1, 1)
    failed, passed = rows.rows
    assert failed.status == "fail"
    assert (failed.lhs, failed.rhs) == ("1/2", "1/3")
    assert passed.status == "pass" and passed.lhs is None

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from umbral_lab.errors import BudgetExceeded, InvalidWeight, NotPrime
from umbral_lab.numbers import QWeight, padic_valuation
from umbral_lab.padic_lab import (
    PAdicExperiment,
    convergence_report,
    distribution_regroup_check,
    fermionic_sum,
    is_nondecreasing,
    iterated_convergence_report,
    iterated_fermionic_sum,
    lemma1_check,
    lemma1_report,
    level_differences,
    power_sums,
    strictly_increasing_tail,
    summarize,
    weighted_sum,
)
from umbral_lab.polynomials import Polynomial

from .conftest import polynomials, small_rationals

x = Polynomial.x()
LEVELS = tuple(range(1, 7))
W = QWeight(4, 7)


def experiment(integrand=Polynomial.one(), weight=W, levels=LEVELS, **kw):
    return PAdicExperiment(p=3, weight=weight, levels=levels, integrand=integrand, **kw)


def test_experiment_validation():
    with pytest.raises(NotPrime):
        PAdicExperiment(p=9, weight=W, levels=(1,), integrand=x)
    with pytest.raises(NotPrime):
        PAdicExperiment(p=2, weight=QWeight(3, 5), levels=(1,), integrand=x)
    with pytest.raises(InvalidWeight):
        PAdicExperiment(p=3, weight=QWeight(2, 7), levels=(1,), integrand=x)
    with pytest.raises(ValueError):
        experiment(levels=())
    with pytest.raises(ValueError):
        experiment(levels=(0, 1))
    with pytest.raises(BudgetExceeded):
        experiment(levels=(1, 5), budget=100)


def test_default_weight():
    exp = PAdicExperiment.default(5, x, [1, 2])
    assert exp.weight == QWeight(6, 11)


def test_constant_integrand_is_geometric_sum():
    exp = experiment()
    for m in (1, 2):
        n = 3**m
        r = -W.qz
        geometric = sum((r**i for i in range(n)), Fraction(0))
        assert fermionic_sum(exp, m) == geometric * (1 + W.q) / (1 + W.q**n)
    target = W.two_q / (1 + W.qz)
    vals = [padic_valuation(fermionic_sum(exp, m) - target, 3) for m in LEVELS]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_classical_first_level():
    exp = experiment(integrand=x, weight=QWeight(1, 1), levels=(1,))
    assert fermionic_sum(exp, 1) == 1


def test_budget_is_checked_per_sum():
    exp = experiment(levels=(1,), budget=30)
    with pytest.raises(BudgetExceeded):
        fermionic_sum(exp, 4)


@pytest.mark.parametrize("n", range(5))
def test_convergence_report_criterion(n):
    rows = convergence_report(experiment(), n)
    assert [m for m, _ in rows] == list(LEVELS)
    assert summarize(rows, tail_from=3)


def test_convergence_with_shift_and_classical_target():
    rows = convergence_report(experiment(), 2, x0=Fraction(1, 2))
    assert all(v >= m for m, v in rows)
    classical = experiment(weight=QWeight(1, 1))
    rows = convergence_report(classical, 1)
    vals = [v for _, v in rows]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_parallel_report_matches_sequential():
    exp = experiment()
    assert convergence_report(exp, 3, workers=4) == convergence_report(exp, 3, workers=1)


@pytest.mark.parametrize("integrand", [Polynomial.one(), x**2, x**3 + 2 * x])
def test_lemma1_defect_valuations_grow(integrand):
    rows = lemma1_report(experiment(integrand=integrand))
    vals = [v for _, v in rows]
    assert is_nondecreasing(vals)
    assert strictly_increasing_tail(vals, 2)


def test_lemma1_constant_defect_valuation():
    exp = experiment()
    assert [v for _, v in lemma1_report(exp)] == [m + 1 for m in LEVELS]


def test_lemma1_classical_weight():
    exp = experiment(integrand=Polynomial.one(), weight=QWeight(1, 1))
    assert lemma1_check(exp, 3) == 0


def test_level_differences_grow():
    rows = level_differences(experiment(integrand=x**2))
    vals = [v for _, v in rows]
    assert is_nondecreasing(vals)


def test_iterated_sum():
    exp = experiment(integrand=x, levels=(1, 2, 3))
    assert iterated_fermionic_sum(exp, 1, 2, 1) == fermionic_sum(exp, 2)
    e0 = W.two_q / (1 + W.qz)
    m1 = iterated_fermionic_sum(exp, 2, 1, 0)
    assert padic_valuation(m1 - e0**2, 3) >= 1
    rows = iterated_convergence_report(exp, 2, 1)
    vals = [v for _, v in rows]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    with pytest.raises(BudgetExceeded):
        iterated_fermionic_sum(experiment(levels=(1,), budget=100), 2, 3, 1)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [0, 1, 3])
def test_distribution_regroup_is_exact(m, n):
    assert distribution_regroup_check(experiment(levels=(m,)), m, n, Fraction(1, 5))


def test_summary_helpers():
    assert is_nondecreasing([1, 1, 2, math.inf])
    assert not is_nondecreasing([2, 1])
    assert strictly_increasing_tail([1, 2, 3, math.inf, math.inf])
    assert not strictly_increasing_tail([1, 2, 2])
    assert summarize([(1, 0), (2, 0), (3, 1), (4, 2)], tail_from=2)
    assert not summarize([(1, 0), (2, 0), (3, 1), (4, 2)], tail_from=1)


@given(small_rationals, st.integers(min_value=0, max_value=12))
def test_power_sums_match_direct_sum(r, terms):
    want = [sum((r**xi * xi**j for xi in range(terms)), Fraction(0)) for j in range(5)]
    assert power_sums(r, terms, 4) == want


@pytest.mark.parametrize("terms", [0, 1, 5, 9])
def test_power_sums_at_ratio_one(terms):
    assert power_sums(1, terms, 3) == [sum((Fraction(xi) ** j for xi in range(terms)), Fraction(0)) for j in range(4)]


@given(polynomials(max_degree=5))
def test_weighted_sum_matches_direct_sum(f):
    r = -W.qz
    direct = sum((r**xi * f(Fraction(xi)) for xi in range(9)), Fraction(0))
    assert weighted_sum(W, 9, f) == direct * (1 + W.q) / (1 + W.q**9)


@pytest.mark.parametrize("k,m", [(2, 1), (3, 1), (2, 2)])
def test_iterated_sum_matches_enumeration(k, m):
    exp = experiment(levels=(m,))
    x0 = Fraction(1, 5)
    terms = 3**m
    r = -W.qz
    direct = sum(
        (r ** sum(xs) * (x0 + sum(xs)) ** 3 for xs in itertools.product(range(terms), repeat=k)),
        Fraction(0),
    )
    assert iterated_fermionic_sum(exp, k, m, 3, x0) == direct / ((1 + W.q**terms) / (1 + W.q)) ** k


def test_deep_levels_constant_integrand():
    # v_3(7^(3^m) - 1) = m + 1
    assert convergence_report(experiment(levels=(9, 10)), 0) == [(9, 10), (10, 11)]

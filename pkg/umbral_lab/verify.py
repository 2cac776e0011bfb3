"""
`umbral-lab verify` 背后的恒等式检查集。

每个 (恒等式, 权重, 参数) 产出一行 CheckRow；失败的行会带上两边的字符串形式，便于排查。
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .models import CheckRow, QEulerTableModel, VerifyReport, WeightModel
from .numbers import QWeight
from .polynomials import Polynomial
from .qeuler import (
    QEulerContext,
    QEulerTable,
    addition_formula,
    appell_property_check,
    binomial_relation_check,
    build_context,
    distribution_sides,
    functional_equation_sides,
    integral_operator,
    integral_value,
    lowering_check,
    operator_form_sides,
    order_k_convolution,
    order_k_table,
    qeuler_polynomials,
    scaled_distribution_sides,
    scaling_sides,
    shift_recurrence_sides,
    theorem1_sequence,
)
from .series import exp_series
from .umbral import ShefferPair, apply_functional, biorthogonality, multinomial_action, sheffer_identity_sides


logger = logging.getLogger(__name__)


DEFAULT_WEIGHTS: tuple[QWeight, ...] = (
    QWeight(1, 1),
    QWeight(Fraction(2, 3), Fraction(3, 5)),
    QWeight(Fraction(1, 2), Fraction(1, 2)),
    QWeight(Fraction(-3, 7), Fraction(5, 2)),
    QWeight(3, Fraction(-1, 5)),
)

# 分布律与 Sheffer 恒等式的取值点
EVAL_POINTS: tuple[Fraction, ...] = (Fraction(0), Fraction(1, 2), Fraction(-2, 3))
SHEFFER_POINTS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(1, 3), Fraction(-5, 2)),
    (Fraction(2), Fraction(3, 7)),
)

DISTRIBUTION_MAX_N = 8
SCALED_DISTRIBUTION_MAX_N = 6
MULTINOMIAL_MAX_FACTORS = 3


@dataclass(frozen=True)
class SuiteParams:
    n_max: int
    precision: int
    d_list: Sequence[int] = (1, 3, 5)
    alpha_list: Sequence[Fraction] = (Fraction(2), Fraction(-1), Fraction(1, 3))
    k_list: Sequence[int] = (1, 2, 3)
    points: Sequence[Fraction] = field(default=EVAL_POINTS)


class _Rows:
    """收集单个权重下的 CheckRow。"""

    def __init__(self, weight: QWeight):
        self.weight = weight
        self._wm = WeightModel.from_weight(weight)
        self.rows: list[CheckRow] = []

    def sides(self, identity: str, params: str, lhs: Any, rhs: Any) -> None:
        ok = lhs == rhs
        if not ok:
            logger.warning("%s %s at %s: %s != %s", identity, params, self.weight, lhs, rhs)
        self.rows.append(
            CheckRow(
                identity=identity,
                weight=self._wm,
                params=params,
                status="pass" if ok else "fail",
                lhs=None if ok else str(lhs),
                rhs=None if ok else str(rhs),
            )
        )

    def flag(self, identity: str, params: str, ok: bool) -> None:
        if not ok:
            logger.warning("%s %s failed at %s", identity, params, self.weight)
        self.rows.append(
            CheckRow(identity=identity, weight=self._wm, params=params, status="pass" if ok else "fail")
        )


def _check_qeuler(rows: _Rows, ctx: QEulerContext, table: QEulerTable, n_max: int) -> None:
    rows.flag("appell_property", f"n<={n_max}", appell_property_check(table))
    rows.flag("binomial_relation", f"n<={n_max}", binomial_relation_check(table))
    rows.sides("theorem1", f"n<={n_max}", theorem1_sequence(ctx, n_max), list(table.polynomials))
    for n in range(n_max):
        rows.sides("operator_form", f"n={n}", *operator_form_sides(ctx, n, table))
        rows.sides("shift_recurrence", f"n={n}", *shift_recurrence_sides(ctx, n, table))
    for n in range(n_max + 1):
        rows.sides("functional_equation", f"n={n}", *functional_equation_sides(ctx, n, table))


def _check_integral(rows: _Rows, ctx: QEulerContext, table: QEulerTable, n_max: int) -> None:
    for n in range(n_max + 1):
        xn = Polynomial.monomial(n)
        rows.sides("integral_number", f"n={n}", integral_value(ctx, xn), table.numbers[n])
        rows.sides("integral_polynomial", f"n={n}", integral_operator(ctx, xn), table.polynomials[n])


def _check_order_k(rows: _Rows, ctx: QEulerContext, table: QEulerTable, params: SuiteParams) -> None:
    n_max = params.n_max
    for k in params.k_list:
        tk = order_k_table(ctx, k, n_max)
        rows.flag("order_k_binomial", f"k={k}", binomial_relation_check(tk))
        rows.flag("order_k_lowering", f"k={k}", lowering_check(tk))
        for n in range(n_max + 1):
            rows.sides("order_k_convolution", f"k={k} n={n}", tk.numbers[n], order_k_convolution(ctx, k, n, table))
            rows.sides(
                "order_k_integral", f"k={k} n={n}", integral_value(ctx, Polynomial.monomial(n), k), tk.numbers[n]
            )


def _check_distribution(rows: _Rows, ctx: QEulerContext, table: QEulerTable, params: SuiteParams) -> None:
    top = min(params.n_max, DISTRIBUTION_MAX_N)
    for d in params.d_list:
        for n in range(top + 1):
            for x0 in params.points:
                rows.sides("distribution", f"d={d} n={n} x0={x0}", *distribution_sides(ctx, n, d, x0, table))
        for n in range(min(top, SCALED_DISTRIBUTION_MAX_N) + 1):
            x0 = params.points[-1]
            rows.sides(
                "scaled_distribution", f"d={d} n={n} x0={x0}", *scaled_distribution_sides(ctx, n, d, x0, table)
            )


def _check_scaling(rows: _Rows, ctx: QEulerContext, table: QEulerTable, params: SuiteParams) -> None:
    for alpha in params.alpha_list:
        for n in range(params.n_max + 1):
            rows.sides("scaling", f"alpha={alpha} n={n}", *scaling_sides(ctx, n, alpha, table))


def _check_sheffer(rows: _Rows, ctx: QEulerContext, table: QEulerTable, n_max: int) -> None:
    # 对 Appell 对 (g, t)，伴随序列就是 x^k
    P = [Polynomial.monomial(k) for k in range(n_max + 1)]
    S = table.polynomials
    for x0, y0 in SHEFFER_POINTS:
        for n in range(n_max + 1):
            lhs, rhs_y, rhs_x = sheffer_identity_sides(S, P, n, x0, y0)
            rows.sides("sheffer_identity", f"n={n} x0={x0} y0={y0}", lhs, rhs_y)
            rows.sides("sheffer_identity_swapped", f"n={n} x0={x0} y0={y0}", lhs, rhs_x)
        for n in range(n_max + 1):
            rows.sides(
                "addition_formula", f"n={n} y={y0}", addition_formula(ctx, n, y0, table), S[n].shift(y0)
            )


def _check_biorthogonality(rows: _Rows, ctx: QEulerContext, table: QEulerTable, n_max: int) -> None:
    pair = ShefferPair.appell(ctx.g)
    got = biorthogonality(pair, table.polynomials, n_max, n_max)
    want = [[Fraction(math.factorial(n)) if n == k else Fraction(0) for k in range(n_max + 1)] for n in range(n_max + 1)]
    rows.sides("biorthogonality", f"n,k<={n_max}", got, want)


def _check_multinomial(rows: _Rows, ctx: QEulerContext, n_max: int) -> None:
    factors = [ctx.functional, ctx.g, exp_series(Fraction(1, 2), ctx.precision)]
    for m in range(1, MULTINOMIAL_MAX_FACTORS + 1):
        fs = factors[:m]
        product = fs[0]
        for f in fs[1:]:
            product = product * f
        for n in range(n_max + 1):
            rows.sides(
                "multinomial", f"m={m} n={n}", multinomial_action(fs, n), apply_functional(product, Polynomial.monomial(n))
            )


def _check_classical(rows: _Rows, table: QEulerTable, n_max: int) -> None:
    w = table.weight
    if w.q != 1 or w.zeta != 1:
        return
    half = Fraction(1, 2)
    if n_max >= 1:
        rows.sides("classical_E1", "", table.polynomials[1], Polynomial([-half, 1]))
        rows.sides("classical_number_E1", "", table.numbers[1], -half)
    if n_max >= 2:
        rows.sides("classical_E2", "", table.polynomials[2], Polynomial([0, -1, 1]))


def verify_weight(weight: QWeight, params: SuiteParams) -> tuple[list[CheckRow], QEulerTable]:
    ctx = build_context(weight, params.precision)
    table = qeuler_polynomials(ctx, params.n_max)
    rows = _Rows(weight)
    _check_qeuler(rows, ctx, table, params.n_max)
    _check_integral(rows, ctx, table, params.n_max)
    _check_order_k(rows, ctx, table, params)
    _check_distribution(rows, ctx, table, params)
    _check_scaling(rows, ctx, table, params)
    _check_sheffer(rows, ctx, table, params.n_max)
    _check_biorthogonality(rows, ctx, table, params.n_max)
    _check_multinomial(rows, ctx, params.n_max)
    _check_classical(rows, table, params.n_max)
    failed = sum(r.status == "fail" for r in rows.rows)
    logger.info("verify %s: %d checks, %d failed", weight, len(rows.rows), failed)
    return rows.rows, table


def run_suite(
    weights: Sequence[QWeight],
    params: SuiteParams,
    workers: int = 1,
) -> VerifyReport:
    def one(w: QWeight) -> tuple[list[CheckRow], QEulerTable]:
        return verify_weight(w, params)

    if workers <= 1 or len(weights) <= 1:
        results = [one(w) for w in weights]
    else:
        # 按输入顺序合并，输出与串行一致
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, weights))
    checks: list[CheckRow] = []
    tables: list[QEulerTableModel] = []
    for rows, table in results:
        checks.extend(rows)
        tables.append(QEulerTableModel.from_table(table))
    return VerifyReport(checks=checks, numbers=tables)

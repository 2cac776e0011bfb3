"""
加权 q-Euler 数与 q-Euler 多项式。

E_{n,zeta}^q(x) 由生成函数给出：

    [2]_q / (q zeta e^t + 1) * e^{xt} = sum E_{n,zeta}^q(x) t^n / n!

即 g_q(t|zeta) = (q zeta e^t + 1)/[2]_q 的 Appell 序列；k 阶族对应 g^k。
恒等式都在具体的有理权重上精确求值来检查：*_sides 返回两边的值（便于报告不一致），
对应的 *_check 只返回是否相等。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .errors import DivisionByZero, InsufficientPrecision, PoleAtNonpositive
from .numbers import QWeight, RationalLike, multinomial, q_bracket_neg, to_rational
from .polynomials import Polynomial
from .series import TruncatedSeries
from .umbral import apply_functional, apply_operator, appell_sequence, compositions


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QEulerContext:
    weight: QWeight
    precision: int
    g: TruncatedSeries

    @property
    def two_q(self) -> Fraction:
        return self.weight.two_q

    @cached_property
    def functional(self) -> TruncatedSeries:
        """加权积分对应的级数 [2]_q/(zeta q e^t + 1)。"""
        return self.g.invert()

    def g_power(self, k: int) -> TruncatedSeries:
        return self.g**k


@dataclass(frozen=True)
class QEulerTable:
    weight: QWeight
    order: int
    numbers: tuple[Fraction, ...]
    polynomials: tuple[Polynomial, ...]

    @property
    def n_max(self) -> int:
        return len(self.polynomials) - 1


def build_context(weight: QWeight, precision: int) -> QEulerContext:
    """g_0 = (1 + q zeta)/(1 + q), g_k = q zeta / ([2]_q k!) ，k >= 1。"""
    if precision < 0:
        raise ValueError("precision must be >= 0")
    two_q = weight.two_q
    coeffs = [(1 + weight.qz) / two_q]
    coeffs += [weight.qz / (two_q * math.factorial(k)) for k in range(1, precision + 1)]
    return QEulerContext(weight=weight, precision=precision, g=TruncatedSeries(coeffs, precision))


def _table(ctx: QEulerContext, k: int, n_max: int) -> QEulerTable:
    if n_max > ctx.precision:
        raise InsufficientPrecision(f"n_max={n_max} exceeds context precision {ctx.precision}")
    polys = appell_sequence(ctx.g_power(k), n_max)
    return QEulerTable(
        weight=ctx.weight,
        order=k,
        numbers=tuple(p.coeff(0) for p in polys),
        polynomials=tuple(polys),
    )


def qeuler_polynomials(ctx: QEulerContext, n_max: int) -> QEulerTable:
    return _table(ctx, 1, n_max)


def order_k_table(ctx: QEulerContext, k: int, n_max: int) -> QEulerTable:
    if k < 1:
        raise ValueError(f"order k must be >= 1, got {k}")
    return _table(ctx, k, n_max)


def _ensure_table(ctx: QEulerContext, n: int, table: Optional[QEulerTable]) -> QEulerTable:
    if table is not None and table.order == 1 and table.n_max >= n:
        return table
    return qeuler_polynomials(ctx, n)


# ---- 升阶递推 ----

def theorem1_step(ctx: QEulerContext, e_n: Polynomial) -> Polynomial:
    """E_{n+1} = (x - g'/g) E_n."""
    log_deriv = ctx.g.derivative() * ctx.functional
    return Polynomial.x() * e_n - apply_operator(log_deriv, e_n)


def theorem1_sequence(ctx: QEulerContext, n_max: int) -> list[Polynomial]:
    out = [Polynomial.constant(1 / ctx.g[0])]
    for _ in range(n_max):
        out.append(theorem1_step(ctx, out[-1]))
    return out


def operator_form_sides(ctx: QEulerContext, n: int, table: Optional[QEulerTable] = None) -> tuple[Polynomial, Polynomial]:
    """比较 g E_{n+1} 与 g x E_n - g' E_n。"""
    t = _ensure_table(ctx, n + 1, table)
    e_n, e_next = t.polynomials[n], t.polynomials[n + 1]
    lhs = apply_operator(ctx.g, e_next)
    rhs = apply_operator(ctx.g, Polynomial.x() * e_n) - apply_operator(ctx.g.derivative(), e_n)
    return lhs, rhs


def operator_form_check(ctx: QEulerContext, n: int, table: Optional[QEulerTable] = None) -> bool:
    lhs, rhs = operator_form_sides(ctx, n, table)
    return lhs == rhs


# ---- 函数方程 ----

def functional_equation_sides(
    ctx: QEulerContext, n: int, table: Optional[QEulerTable] = None
) -> tuple[Polynomial, Polynomial]:
    """比较 zeta q E_n(x+1) + E_n(x) 与 [2]_q x^n。"""
    e_n = _ensure_table(ctx, n, table).polynomials[n]
    lhs = e_n.shift(1) * ctx.weight.qz + e_n
    rhs = Polynomial.monomial(n, ctx.two_q)
    return lhs, rhs


def functional_equation_check(ctx: QEulerContext, n: int, table: Optional[QEulerTable] = None) -> bool:
    lhs, rhs = functional_equation_sides(ctx, n, table)
    if lhs != rhs:
        logger.warning("functional equation n=%s at %s: %s != %s", n, ctx.weight, lhs, rhs)
    return lhs == rhs


def shift_recurrence_sides(
    ctx: QEulerContext, n: int, table: Optional[QEulerTable] = None
) -> tuple[Polynomial, Polynomial]:
    """比较 zeta q E_{n+1}(x+1) + E_{n+1}(x) 与 zeta q (x+1) E_n(x+1) + x E_n(x) - zeta q E_n(x+1)。"""
    t = _ensure_table(ctx, n + 1, table)
    e_n, e_next = t.polynomials[n], t.polynomials[n + 1]
    qz = ctx.weight.qz
    x = Polynomial.x()
    e_n_1 = e_n.shift(1)
    lhs = e_next.shift(1) * qz + e_next
    rhs = (x + 1) * e_n_1 * qz + x * e_n - e_n_1 * qz
    return lhs, rhs


def shift_recurrence_check(ctx: QEulerContext, n: int, table: Optional[QEulerTable] = None) -> bool:
    lhs, rhs = shift_recurrence_sides(ctx, n, table)
    return lhs == rhs


# ---- Appell 结构性质 ----

def appell_property_check(table: QEulerTable) -> bool:
    """d/dx E_n = n E_{n-1}."""
    ps = table.polynomials
    return all(ps[n].derivative() == ps[n - 1] * n for n in range(1, len(ps)))


def binomial_relation_check(table: QEulerTable) -> bool:
    """逐系数比较 E_n(x) = sum_l C(n,l) x^l E_{n-l}。"""
    for n, p in enumerate(table.polynomials):
        expected = Polynomial(math.comb(n, l) * table.numbers[n - l] for l in range(n + 1))
        if p != expected:
            return False
    return True


def addition_formula(
    ctx: QEulerContext, n: int, y: RationalLike, table: Optional[QEulerTable] = None
) -> Polynomial:
    """sum_k C(n,k) E_{n-k}(y) x^k，应等于 E_n(x + y)。"""
    t = _ensure_table(ctx, n, table)
    y = to_rational(y)
    return Polynomial(math.comb(n, k) * t.polynomials[n - k](y) for k in range(n + 1))


# ---- 分布律与伸缩 ----

def _check_odd(d: int) -> None:
    if d < 1 or d % 2 == 0:
        raise ValueError(f"d must be an odd natural number, got {d}")


def distribution_rhs(ctx: QEulerContext, n: int, d: int, x0: RationalLike) -> Fraction:
    """d^n/[d]_{-q} sum_j (-1)^j zeta^j q^j E_{n,zeta^d}^{q^d}(x0 + j/d)."""
    _check_odd(d)
    x0 = to_rational(x0)
    w = ctx.weight
    ctx_d = build_context(w.power(d), n)
    e_d = qeuler_polynomials(ctx_d, n).polynomials[n]
    acc = Fraction(0)
    for j in range(d):
        acc += (-w.qz) ** j * e_d(x0 + Fraction(j, d))
    return Fraction(d) ** n / q_bracket_neg(d, w.q) * acc


def distribution_sides(
    ctx: QEulerContext, n: int, d: int, x0: RationalLike, table: Optional[QEulerTable] = None
) -> tuple[Fraction, Fraction]:
    x0 = to_rational(x0)
    lhs = _ensure_table(ctx, n, table).polynomials[n](d * x0)
    return lhs, distribution_rhs(ctx, n, d, x0)


def distribution_check(
    ctx: QEulerContext, n: int, d: int, x0: RationalLike, table: Optional[QEulerTable] = None
) -> bool:
    lhs, rhs = distribution_sides(ctx, n, d, x0, table)
    if lhs != rhs:
        logger.warning("distribution n=%s d=%s x0=%s at %s: %s != %s", n, d, x0, ctx.weight, lhs, rhs)
    return lhs == rhs


def scaling_operator(ctx: QEulerContext, alpha: RationalLike) -> TruncatedSeries:
    """g(t) / g(t/alpha)."""
    alpha = to_rational(alpha)
    if alpha == 0:
        raise DivisionByZero("alpha must be nonzero")
    return ctx.g * ctx.g.rescale(1 / alpha).invert()


def scaling_sides(
    ctx: QEulerContext, n: int, alpha: RationalLike, table: Optional[QEulerTable] = None
) -> tuple[Polynomial, Polynomial]:
    """比较 E_n(alpha x) 与 alpha^n [g(t)/g(t/alpha)] E_n(x)。"""
    alpha = to_rational(alpha)
    if alpha == 0:
        raise DivisionByZero("scaling needs alpha != 0")
    e_n = _ensure_table(ctx, n, table).polynomials[n]
    lhs = e_n.scale_argument(alpha)
    rhs = apply_operator(scaling_operator(ctx, alpha), e_n) * alpha**n
    return lhs, rhs


def scaling_check(ctx: QEulerContext, n: int, alpha: RationalLike, table: Optional[QEulerTable] = None) -> bool:
    lhs, rhs = scaling_sides(ctx, n, alpha, table)
    if lhs != rhs:
        logger.warning("scaling n=%s alpha=%s at %s: %s != %s", n, alpha, ctx.weight, lhs, rhs)
    return lhs == rhs


def scaled_distribution_sides(
    ctx: QEulerContext, n: int, d: int, x0: RationalLike, table: Optional[QEulerTable] = None
) -> tuple[Fraction, Fraction]:
    """比较 d^n [g(t)/g(t/d)] E_n 在 x0 处的值与分布律右侧在 x0 处的值。"""
    _check_odd(d)
    e_n = _ensure_table(ctx, n, table).polynomials[n]
    lhs = (apply_operator(scaling_operator(ctx, d), e_n) * Fraction(d) ** n)(x0)
    return lhs, distribution_rhs(ctx, n, d, x0)


def scaled_distribution_check(
    ctx: QEulerContext, n: int, d: int, x0: RationalLike, table: Optional[QEulerTable] = None
) -> bool:
    lhs, rhs = scaled_distribution_sides(ctx, n, d, x0, table)
    return lhs == rhs


# ---- k 阶族 ----

def order_k_convolution(ctx: QEulerContext, k: int, n: int, base: Optional[QEulerTable] = None) -> Fraction:
    """sum_{i_1+..+i_k=n} C(n; i) E_{i_1} ... E_{i_k}。"""
    if k < 1:
        raise ValueError(f"order k must be >= 1, got {k}")
    numbers = _ensure_table(ctx, n, base).numbers
    total = Fraction(0)
    for idx in compositions(n, k):
        term = Fraction(multinomial(idx))
        for i in idx:
            term *= numbers[i]
        total += term
    return total


def lowering_check(table: QEulerTable) -> bool:
    """t E_n^{(k)} = n E_{n-1}^{(k)}，t 作用为 d/dx。"""
    return appell_property_check(table)


# ---- 积分表示 ----

def integral_functional(ctx: QEulerContext, k: int = 1) -> TruncatedSeries:
    """级数 ([2]_q/(zeta q e^t + 1))^k。"""
    return ctx.functional**k


def integral_value(ctx: QEulerContext, p: Polynomial, k: int = 1) -> Fraction:
    """p(xi_1 + ... + xi_k) 的 k 重加权积分。"""
    return apply_functional(integral_functional(ctx, k), p)


def integral_operator(ctx: QEulerContext, p: Polynomial, k: int = 1) -> Polynomial:
    """p(x + xi_1 + ... + xi_k) 的 k 重加权积分，结果是 x 的多项式。"""
    return apply_operator(integral_functional(ctx, k), p)


# ---- q-Zeta 部分和 ----

def qzeta_partial(ctx: QEulerContext, s: int, x0: RationalLike, M: int) -> Fraction:
    """[2]_q sum_{m=0}^{M} (-1)^m (q zeta)^m (m + x0)^{-s}."""
    x0 = to_rational(x0)
    if M < 0:
        raise ValueError("M must be >= 0")
    if s > 0 and x0 <= 0 and x0.denominator == 1 and -x0 <= M:
        raise PoleAtNonpositive(f"m + x0 vanishes at m={-x0}")
    ratio = -ctx.weight.qz
    w = Fraction(1)
    acc = Fraction(0)
    for m in range(M + 1):
        acc += w * (m + x0) ** (-s)
        w *= ratio
    return ctx.two_q * acc


def qzeta_convergence(
    ctx: QEulerContext, n: int, x0: RationalLike, Ms: Sequence[int]
) -> list[tuple[int, Fraction, Fraction]]:
    """s = -n 时逐个 M 给出 (M, S_M, S_M - E_n(x0))。"""
    target = qeuler_polynomials(ctx, n).polynomials[n](x0)
    rows = []
    for M in Ms:
        partial = qzeta_partial(ctx, -n, x0, M)
        rows.append((M, partial, partial - target))
    return rows

"""
加权费米子 p 进 q-积分的第 m 层截断：

    S_m(f) = 1/[p^m]_{-q} * sum_{xi=0}^{p^m-1} zeta^xi (-1)^xi q^xi f(xi)

全程精确计算；p 进收敛性通过 v_p(S_m - target) 随层数增长来确认。
"""

from __future__ import annotations

import dataclasses
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .config import DEFAULT_BUDGET
from .errors import BudgetExceeded, InvalidWeight, NotPrime
from .numbers import QWeight, RationalLike, Valuation, is_prime, padic_valuation, q_bracket_neg, to_rational
from .polynomials import Polynomial
from .qeuler import build_context, order_k_table, qeuler_polynomials
from .series import TruncatedSeries, exp_series


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PAdicExperiment:
    p: int
    weight: QWeight
    levels: tuple[int, ...]
    integrand: Polynomial
    budget: int = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(self.levels))
        if self.p == 2 or not is_prime(self.p):
            raise NotPrime(f"an odd prime is required, got {self.p}")
        if not self.weight.is_padic_admissible(self.p):
            raise InvalidWeight(
                f"weight {self.weight} needs v_{self.p}(q-1) >= 1 and v_{self.p}(zeta-1) >= 1"
            )
        if not self.levels:
            raise ValueError("at least one level is required")
        if min(self.levels) < 1:
            raise ValueError(f"levels must be >= 1, got {list(self.levels)}")
        self.check_budget(self.p ** max(self.levels))

    @classmethod
    def default(
        cls,
        p: int,
        integrand: Polynomial,
        levels: Sequence[int],
        budget: int = DEFAULT_BUDGET,
    ) -> "PAdicExperiment":
        """q = 1 + p, zeta = 1 + 2p."""
        return cls(p=p, weight=QWeight(1 + p, 1 + 2 * p), levels=tuple(levels), integrand=integrand, budget=budget)

    def check_budget(self, terms: int) -> None:
        if terms > self.budget:
            raise BudgetExceeded(f"{terms} summands exceed the budget of {self.budget}")

    def with_integrand(self, integrand: Polynomial) -> "PAdicExperiment":
        return dataclasses.replace(self, integrand=integrand)


def power_sums(r: RationalLike, terms: int, j_max: int) -> list[Fraction]:
    """
    闭式计算 A_j = sum_{xi < terms} r^xi xi^j，j = 0..j_max。

    把 xi 平移为 xi + 1 得到
    (r - 1) A_j = r^terms terms^j - [j == 0] - r sum_{i<j} C(j, i) A_i；
    r = 1 时改用 (xi + 1)^{j+1} - xi^{j+1} 的裂项求和。
    只需一次 r^terms 幂运算，不再逐项累加 terms 个大整数。
    """
    r = to_rational(r)
    out: list[Fraction] = []
    if r == 1:
        for j in range(j_max + 1):
            lower = sum((math.comb(j + 1, i) * out[i] for i in range(j)), Fraction(0))
            out.append((Fraction(terms) ** (j + 1) - lower) / (j + 1))
        return out
    top = r**terms
    for j in range(j_max + 1):
        lower = sum((math.comb(j, i) * out[i] for i in range(j)), Fraction(0))
        edge = top * terms**j - (1 if j == 0 else 0)
        out.append((edge - r * lower) / (r - 1))
    return out


def weighted_sum(weight: QWeight, terms: int, f: Polynomial) -> Fraction:
    """1/[terms]_{-q} * sum_{xi < terms} (-q zeta)^xi f(xi)，f 为多项式。"""
    if f.is_zero():
        return Fraction(0)
    sums = power_sums(-weight.qz, terms, len(f.coeffs) - 1)
    acc = sum((c * a for c, a in zip(f.coeffs, sums)), Fraction(0))
    return acc / q_bracket_neg(terms, weight.q)


def fermionic_sum(exp: PAdicExperiment, m: int, x0: RationalLike = 0) -> Fraction:
    """第 m 层和，被积函数取在 x0 + xi 处。"""
    terms = exp.p**m
    exp.check_budget(terms)
    x0 = to_rational(x0)
    return weighted_sum(exp.weight, terms, exp.integrand.shift(x0))


def lemma1_check(exp: PAdicExperiment, m: int) -> Fraction:
    """偏差 q zeta S_m(f(.+1)) + S_m(f) - [2]_q f(0)，层数越高 p 进赋值应越大。"""
    w = exp.weight
    shifted = fermionic_sum(exp.with_integrand(exp.integrand.shift(1)), m)
    plain = fermionic_sum(exp, m)
    return w.qz * shifted + plain - w.two_q * exp.integrand(0)


def lemma1_report(exp: PAdicExperiment) -> list[tuple[int, Valuation]]:
    return [(m, padic_valuation(lemma1_check(exp, m), exp.p)) for m in exp.levels]


def _map_levels(fn: Callable[[int], Valuation], levels: Sequence[int], workers: int) -> list[Valuation]:
    if workers <= 1 or len(levels) <= 1:
        return [fn(m) for m in levels]
    # executor.map 保持输入顺序，结果与顺序执行一致
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, levels))


def convergence_report(
    exp: PAdicExperiment, n: int, x0: RationalLike = 0, workers: int = 1
) -> list[tuple[int, Valuation]]:
    """逐层计算 v_p(S_m - E_{n,zeta}^q(x0))，被积函数为 (x0 + xi)^n。"""
    x0 = to_rational(x0)
    target = qeuler_polynomials(build_context(exp.weight, n), n).polynomials[n](x0)
    moment = exp.with_integrand(Polynomial.monomial(n))

    def level(m: int) -> Valuation:
        return padic_valuation(fermionic_sum(moment, m, x0) - target, exp.p)

    vals = _map_levels(level, exp.levels, workers)
    logger.info("convergence p=%s n=%s %s: %s", exp.p, n, exp.weight, vals)
    return list(zip(exp.levels, vals))


def level_differences(exp: PAdicExperiment, x0: RationalLike = 0) -> list[tuple[int, Valuation]]:
    """相邻层之间的 v_p(S_{m+1} - S_m)。"""
    levels = sorted(exp.levels)
    sums = {m: fermionic_sum(exp, m, x0) for m in levels}
    return [(a, padic_valuation(sums[b] - sums[a], exp.p)) for a, b in zip(levels, levels[1:])]


def iterated_fermionic_sum(
    exp: PAdicExperiment, k: int, m: int, n: int, x0: RationalLike = 0
) -> Fraction:
    """(x0 + xi_1 + ... + xi_k)^n 的 k 重第 m 层和，除以 [p^m]_{-q}^k。"""
    if k < 1:
        raise ValueError(f"fold count must be >= 1, got {k}")
    terms = exp.p**m
    exp.check_budget(terms**k)
    x0 = to_rational(x0)
    # sum_xi r^xi e^{xi t} 的 k 次幂乘 e^{x0 t}，第 n 个 umbral 系数即所求
    single = TruncatedSeries.from_umbral(power_sums(-exp.weight.qz, terms, n), n)
    gen = exp_series(x0, n) * single**k
    return gen.umbral()[n] / q_bracket_neg(terms, exp.weight.q) ** k


def iterated_convergence_report(
    exp: PAdicExperiment, k: int, n: int, x0: RationalLike = 0
) -> list[tuple[int, Valuation]]:
    x0 = to_rational(x0)
    target = order_k_table(build_context(exp.weight, n), k, n).polynomials[n](x0)
    return [
        (m, padic_valuation(iterated_fermionic_sum(exp, k, m, n, x0) - target, exp.p))
        for m in exp.levels
    ]


def distribution_regroup_sides(
    exp: PAdicExperiment, m: int, n: int, x0: RationalLike = 0
) -> tuple[Fraction, Fraction]:
    """
    (q, zeta) 下的第 m 层和，与按 p 个剩余类重组后的结果对比。

    令 xi = j + p*eta，p^m 项分成 p 组，每组是权重 (q^p, zeta^p) 下的 p^(m-1) 项，
    被积函数为 ((x0 + j)/p + eta)^n。
    """
    p, w = exp.p, exp.weight
    x0 = to_rational(x0)
    exp.check_budget(p**m)
    moment = Polynomial.monomial(n)
    lhs = weighted_sum(w, p**m, moment.shift(x0))
    wp = w.power(p)
    inner_terms = p ** (m - 1)
    acc = Fraction(0)
    for j in range(p):
        shift = (x0 + j) / p
        acc += (-w.qz) ** j * weighted_sum(wp, inner_terms, moment.shift(shift))
    rhs = Fraction(p) ** n / q_bracket_neg(p, w.q) * acc
    return lhs, rhs


def distribution_regroup_check(
    exp: PAdicExperiment, m: int, n: int, x0: RationalLike = 0
) -> bool:
    lhs, rhs = distribution_regroup_sides(exp, m, n, x0)
    return lhs == rhs


def is_nondecreasing(vals: Sequence[Valuation]) -> bool:
    return all(a <= b for a, b in zip(vals, vals[1:]))


def strictly_increasing_tail(vals: Sequence[Valuation], start: int = 0) -> bool:
    tail = list(vals[start:])
    return all(b >= a + 1 or a == b == float("inf") for a, b in zip(tail, tail[1:]))


def summarize(rows: Sequence[tuple[int, Valuation]], tail_from: Optional[int] = None) -> bool:
    """赋值单调不减，且从 tail_from 层起每层至少增加 1。"""
    vals = [v for _, v in rows]
    if not is_nondecreasing(vals):
        return False
    if tail_from is None:
        return True
    start = next((i for i, (m, _) in enumerate(rows) if m >= tail_from), len(rows))
    return strictly_increasing_tail(vals, start)

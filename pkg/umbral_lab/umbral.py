"""
Umbral 代数：级数作为多项式上的线性泛函和算子。

级数 f(t) = sum c_k t^k 有两种作用方式：
  - 线性泛函：<f | x^n> = n! c_n
  - 算子：f(t) p(x) = sum c_k p^{(k)}(x)
Sheffer 序列由生成函数 1/g(fbar(t)) * exp(x fbar(t)) 展开得到；
双正交性 <g f^k | S_n> = n! delta_{n,k} 因此是独立的校验，而不是构造方式本身。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import InsufficientPrecision, NotDelta, NotInvertible
from .numbers import RationalLike, multinomial, to_rational
from .polynomials import Polynomial
from .series import TruncatedSeries, identity_series


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShefferPair:
    g: TruncatedSeries
    f: TruncatedSeries

    def __post_init__(self) -> None:
        if self.g.order() != 0:
            raise NotInvertible("g of a Sheffer pair must be invertible (order 0)")
        if self.f.order() != 1:
            raise NotDelta("f of a Sheffer pair must be a delta series (order 1)")

    @property
    def precision(self) -> int:
        return min(self.g.precision, self.f.precision)

    @classmethod
    def appell(cls, g: TruncatedSeries) -> "ShefferPair":
        return cls(g, identity_series(g.precision))

    @classmethod
    def associated(cls, f: TruncatedSeries) -> "ShefferPair":
        return cls(TruncatedSeries.one(f.precision), f)


def _require_degree(p: Polynomial, f: TruncatedSeries, what: str) -> None:
    if not p.is_zero() and p.degree > f.precision:
        raise InsufficientPrecision(
            f"{what}: polynomial degree {p.degree} exceeds series precision {f.precision}"
        )


def apply_functional(f: TruncatedSeries, p: Polynomial) -> Fraction:
    """线性泛函作用：<f(t) | p(x)> = sum_n [x^n]p * n! * c_n(f)。"""
    _require_degree(p, f, "apply_functional")
    return sum(
        (c * math.factorial(n) * f[n] for n, c in enumerate(p.coeffs)),
        Fraction(0),
    )


def apply_operator(f: TruncatedSeries, p: Polynomial) -> Polynomial:
    """算子作用：f(t) p(x) = sum_k c_k(f) p^{(k)}(x)。"""
    _require_degree(p, f, "apply_operator")
    if p.is_zero():
        return p
    result = Polynomial.zero()
    for k in range(int(p.degree) + 1):
        if f[k] != 0:
            result = result + p.derivative(k) * f[k]
    return result


def appell_sequence(g: TruncatedSeries, n_max: int) -> list[Polynomial]:
    """S_n = g(t)^{-1} x^n，n = 0..n_max。"""
    if n_max > g.precision:
        raise InsufficientPrecision(f"n_max={n_max} exceeds series precision {g.precision}")
    g_inv = g.invert()
    # S_n(x) = sum_k C(n,k) a_k x^{n-k}，a_k 为 g^{-1} 的 umbral 系数
    a = g_inv.umbral()
    out = []
    for n in range(n_max + 1):
        cs = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            cs[n - k] = math.comb(n, k) * a[k]
        out.append(Polynomial(cs))
    return out


def sheffer_sequence(pair: ShefferPair, n_max: int) -> list[Polynomial]:
    """展开生成函数 1/g(fbar(t)) * exp(x fbar(t)) = sum S_n(x) t^n / n!。"""
    if n_max > pair.precision:
        raise InsufficientPrecision(f"n_max={n_max} exceeds pair precision {pair.precision}")
    fbar = pair.f.truncate(pair.precision).comp_inverse()
    amp = pair.g.compose(fbar).invert()
    # [x^j] S_n = n!/j! [t^n] (A * fbar^j)
    columns = []
    power = amp
    for j in range(n_max + 1):
        columns.append(power)
        power = power * fbar
    out = []
    for n in range(n_max + 1):
        nf = math.factorial(n)
        out.append(
            Polynomial(Fraction(nf, math.factorial(j)) * columns[j][n] for j in range(n + 1))
        )
    return out


def associated_sequence(f: TruncatedSeries, n_max: int) -> list[Polynomial]:
    return sheffer_sequence(ShefferPair.associated(f), n_max)


def biorthogonality(
    pair: ShefferPair, S: Sequence[Polynomial], n_max: int, k_max: int
) -> list[list[Fraction]]:
    """<g f^k | S_n> 组成的矩阵；S 正确时应为 diag(0!, 1!, ...)。"""
    gf = [pair.g]
    for _ in range(k_max):
        gf.append(gf[-1] * pair.f)
    return [[apply_functional(gf[k], S[n]) for k in range(k_max + 1)] for n in range(n_max + 1)]


def expand_functional(h: TruncatedSeries, pair: ShefferPair, S: Sequence[Polynomial]) -> list[Fraction]:
    """lambda_k = <h | S_k> / k!，满足 h = sum lambda_k g f^k。"""
    return [apply_functional(h, s) / math.factorial(k) for k, s in enumerate(S)]


def reconstruct_functional(lams: Sequence[RationalLike], pair: ShefferPair) -> TruncatedSeries:
    n = pair.precision
    term = pair.g.truncate(n)
    f = pair.f.truncate(n)
    result = TruncatedSeries.zero(n)
    for lam in lams:
        result = result + term * to_rational(lam)
        term = term * f
    return result


def expand_polynomial(p: Polynomial, pair: ShefferPair, S: Sequence[Polynomial]) -> list[Fraction]:
    """mu_k = <g f^k | p> / k!，满足 p = sum mu_k S_k。"""
    if not p.is_zero() and p.degree > len(S) - 1:
        raise InsufficientPrecision(f"degree {p.degree} exceeds the {len(S)} available Sheffer terms")
    out = []
    gf = pair.g
    for k in range(len(S)):
        out.append(apply_functional(gf, p) / math.factorial(k))
        gf = gf * pair.f
    return out


def reconstruct_polynomial(mus: Sequence[RationalLike], S: Sequence[Polynomial]) -> Polynomial:
    result = Polynomial.zero()
    for mu, s in zip(mus, S):
        result = result + s * to_rational(mu)
    return result


def sheffer_identity_sides(
    S: Sequence[Polynomial],
    P: Sequence[Polynomial],
    n: int,
    x0: RationalLike,
    y0: RationalLike,
) -> tuple[Fraction, Fraction, Fraction]:
    """返回 (S_n(x0+y0), sum C(n,k) P_k(y0) S_{n-k}(x0), sum C(n,k) P_k(x0) S_{n-k}(y0))。"""
    x0, y0 = to_rational(x0), to_rational(y0)
    lhs = S[n].evaluate(x0 + y0)
    rhs_y = sum((math.comb(n, k) * P[k](y0) * S[n - k](x0) for k in range(n + 1)), Fraction(0))
    rhs_x = sum((math.comb(n, k) * P[k](x0) * S[n - k](y0) for k in range(n + 1)), Fraction(0))
    return lhs, rhs_y, rhs_x


def sheffer_identity_check(
    pair: ShefferPair,
    S: Sequence[Polynomial],
    n: int,
    x0: RationalLike,
    y0: RationalLike,
    P: Optional[Sequence[Polynomial]] = None,
) -> bool:
    if P is None:
        P = associated_sequence(pair.f, n)
    lhs, rhs_y, rhs_x = sheffer_identity_sides(S, P, n, x0, y0)
    ok = lhs == rhs_y == rhs_x
    if not ok:
        logger.warning("sheffer identity n=%s at (%s, %s): %s vs %s vs %s", n, x0, y0, lhs, rhs_y, rhs_x)
    return ok


def compositions(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """枚举所有非负 (i_1..i_m)，满足 i_1 + ... + i_m = n。"""
    if m == 1:
        yield (n,)
        return
    for i in range(n + 1):
        for rest in compositions(n - i, m - 1):
            yield (i,) + rest


def multinomial_action(fs: Sequence[TruncatedSeries], n: int) -> Fraction:
    """多项式定理右侧：sum_{i_1+..+i_m=n} C(n; i) prod <f_j | x^{i_j}>。"""
    if not fs:
        raise ValueError("multinomial_action needs at least one series")
    for f in fs:
        if f.precision < n:
            raise InsufficientPrecision(f"series precision {f.precision} < n={n}")
    # <f | x^i> = i! c_i
    moments = [f.umbral() for f in fs]
    total = Fraction(0)
    for idx in compositions(n, len(fs)):
        term = Fraction(multinomial(idx))
        for mom, i in zip(moments, idx):
            term *= mom[i]
            if term == 0:
                break
        total += term
    return total

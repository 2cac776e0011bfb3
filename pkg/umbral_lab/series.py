"""
有理数上的截断形式幂级数。

按普通系数 c_0..c_N 加精度 N 存储：f(t) = sum c_k t^k + O(t^(N+1))。
umbral 系数 a_k = k! c_k（即 f(t) = sum a_k t^k / k!）通过 umbral() / from_umbral() 互转。

不同精度的级数运算时截断到较小的精度，不做外推。
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import CompositionDomain, InsufficientPrecision, NotDelta, NotInvertible
from .numbers import INFINITY, RationalLike, Valuation, to_rational


Scalar = Union[int, Fraction]


class TruncatedSeries:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike], precision: int | None = None):
        cs = [to_rational(c) for c in coeffs]
        if precision is None:
            precision = len(cs) - 1
        if precision < 0:
            raise ValueError("a series needs precision >= 0")
        if len(cs) <= precision:
            cs.extend([Fraction(0)] * (precision + 1 - len(cs)))
        self._coeffs: tuple[Fraction, ...] = tuple(cs[: precision + 1])

    # ---- 构造 ----

    @classmethod
    def zero(cls, precision: int) -> "TruncatedSeries":
        return cls([], precision)

    @classmethod
    def constant(cls, c: RationalLike, precision: int) -> "TruncatedSeries":
        return cls([c], precision)

    @classmethod
    def one(cls, precision: int) -> "TruncatedSeries":
        return cls.constant(1, precision)

    @classmethod
    def monomial(cls, k: int, precision: int, c: RationalLike = 1) -> "TruncatedSeries":
        """c * t^k；k 超过精度时得到零级数。"""
        cs = [Fraction(0)] * (precision + 1)
        if k <= precision:
            cs[k] = to_rational(c)
        return cls(cs, precision)

    @classmethod
    def from_umbral(cls, a: Sequence[RationalLike], precision: int | None = None) -> "TruncatedSeries":
        return cls([to_rational(ak) / math.factorial(k) for k, ak in enumerate(a)], precision)

    # ---- 访问 ----

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def precision(self) -> int:
        return len(self._coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self._coeffs[k]

    def umbral(self) -> list[Fraction]:
        return [math.factorial(k) * c for k, c in enumerate(self._coeffs)]

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self.precision:
            raise InsufficientPrecision(f"cannot raise precision {self.precision} to {precision}")
        return TruncatedSeries(self._coeffs, precision)

    # ---- 环运算 ----

    def _align(self, other: "TruncatedSeries") -> tuple[tuple[Fraction, ...], tuple[Fraction, ...], int]:
        n = min(self.precision, other.precision)
        return self._coeffs[: n + 1], other._coeffs[: n + 1], n

    def __add__(self, other: Union["TruncatedSeries", Scalar]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            a, b, n = self._align(other)
            return TruncatedSeries([x + y for x, y in zip(a, b)], n)
        if isinstance(other, (int, Fraction)):
            return self + TruncatedSeries.constant(other, self.precision)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self._coeffs], self.precision)

    def __sub__(self, other: Union["TruncatedSeries", Scalar]) -> "TruncatedSeries":
        if isinstance(other, (TruncatedSeries, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: Scalar) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other: Union["TruncatedSeries", Scalar]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            a, b, n = self._align(other)
            out = [Fraction(0)] * (n + 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j in range(n + 1 - i):
                    out[i + j] += ai * b[j]
            return TruncatedSeries(out, n)
        if isinstance(other, (int, Fraction)):
            c = to_rational(other)
            return TruncatedSeries([c * x for x in self._coeffs], self.precision)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Union["TruncatedSeries", Scalar]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self * other.invert()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("series divided by zero scalar")
            return self * (1 / to_rational(other))
        return NotImplemented

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return self.invert() ** (-k)
        result = TruncatedSeries.one(self.precision)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self._coeffs]!r}, precision={self.precision})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.precision + 1})"

    # ---- 阶、逆与复合 ----

    def order(self) -> Valuation:
        """第一个非零系数的下标；存储的系数全为零时返回 inf（受精度限制）。"""
        for k, c in enumerate(self._coeffs):
            if c != 0:
                return k
        return INFINITY

    def invert(self) -> "TruncatedSeries":
        c0 = self._coeffs[0]
        if c0 == 0:
            raise NotInvertible("series with zero constant term has no multiplicative inverse")
        inv0 = 1 / c0
        out = [inv0]
        for n in range(1, self.precision + 1):
            acc = sum((self._coeffs[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
            out.append(-inv0 * acc)
        return TruncatedSeries(out, self.precision)

    def compose(self, g: "TruncatedSeries") -> "TruncatedSeries":
        """f(g(t))，要求 g 的阶 >= 1。"""
        if g.order() == 0:
            raise CompositionDomain("inner series of a composition must have zero constant term")
        n = min(self.precision, g.precision)
        g = g.truncate(n)
        # Horner：f(g) = c_0 + g*(c_1 + g*(c_2 + ...))
        result = TruncatedSeries.constant(self._coeffs[n], n)
        for k in range(n - 1, -1, -1):
            result = result * g + self._coeffs[k]
        return result

    def comp_inverse(self) -> "TruncatedSeries":
        """
        delta 级数的复合逆，逐阶求解。

        记 h = h_1 t + h_2 t^2 + ...，f(h) 的 t^n 系数为 c_1 h_n + sum_{k>=2} c_k [t^n] h^k，
        而 k >= 2 时 [t^n] h^k 只依赖 h_1..h_{n-1}，所以 h_n 可由前面各项解出。
        """
        if self.order() != 1:
            raise NotDelta(f"compositional inverse needs order 1, got {self.order()}")
        n_max = self.precision
        c = self._coeffs
        h = [Fraction(0)] * (n_max + 1)
        # pw[k][m] = [t^m] h^k
        pw = [[Fraction(0)] * (n_max + 1) for _ in range(n_max + 1)]
        h[1] = 1 / c[1]
        pw[1][1] = h[1]
        for n in range(2, n_max + 1):
            acc = Fraction(0)
            for k in range(2, n + 1):
                pw[k][n] = sum((h[j] * pw[k - 1][n - j] for j in range(1, n - k + 2)), Fraction(0))
                acc += c[k] * pw[k][n]
            h[n] = -acc / c[1]
            pw[1][n] = h[n]
        return TruncatedSeries(h, n_max)

    def derivative(self) -> "TruncatedSeries":
        if self.precision == 0:
            raise InsufficientPrecision("derivative of a precision-0 series is undetermined")
        return TruncatedSeries(
            [(k + 1) * self._coeffs[k + 1] for k in range(self.precision)], self.precision - 1
        )

    def rescale(self, c: RationalLike) -> "TruncatedSeries":
        """f(c*t)."""
        c = to_rational(c)
        return TruncatedSeries([ck * c**k for k, ck in enumerate(self._coeffs)], self.precision)


def exp_series(y: RationalLike, precision: int) -> TruncatedSeries:
    """e^{yt}: c_k = y^k / k!."""
    y = to_rational(y)
    return TruncatedSeries([y**k / math.factorial(k) for k in range(precision + 1)], precision)


def identity_series(precision: int) -> TruncatedSeries:
    """级数 t。"""
    return TruncatedSeries.monomial(1, precision)


def order(f: TruncatedSeries) -> Valuation:
    return f.order()


def invert(f: TruncatedSeries) -> TruncatedSeries:
    return f.invert()


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f.compose(g)


def comp_inverse(f: TruncatedSeries) -> TruncatedSeries:
    return f.comp_inverse()


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    return f.derivative()


def power(f: TruncatedSeries, k: int) -> TruncatedSeries:
    return f**k

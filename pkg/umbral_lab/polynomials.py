from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .numbers import RationalLike, Valuation, to_rational


Scalar = Union[int, Fraction]


class Polynomial:
    """有理系数稠密多项式 sum c_n x^n，末尾的零系数会被去掉。"""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, c: RationalLike) -> "Polynomial":
        return cls([c])

    @classmethod
    def one(cls) -> "Polynomial":
        return cls([1])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def monomial(cls, n: int, c: RationalLike = 1) -> "Polynomial":
        return cls([0] * n + [c])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> Valuation:
        # 零多项式的次数记为 -inf
        return len(self._coeffs) - 1 if self._coeffs else -math.inf

    def coeff(self, n: int) -> Fraction:
        return self._coeffs[n] if 0 <= n < len(self._coeffs) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_zero(self) -> bool:
        return not self._coeffs

    # ---- 环运算 ----

    def __add__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        return Polynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __sub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, (Polynomial, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = to_rational(other)
            return Polynomial(c * a for a in self._coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    # ---- 求值与微分 ----

    def evaluate(self, r: RationalLike) -> Fraction:
        r = to_rational(r)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * r + c
        return acc

    __call__ = evaluate

    def derivative(self, k: int = 1) -> "Polynomial":
        """p^{(k)}."""
        if k < 0:
            raise ValueError("negative derivative order")
        return Polynomial(
            math.perm(n, k) * c for n, c in enumerate(self._coeffs) if n >= k
        )

    def shift(self, y: RationalLike) -> "Polynomial":
        """按二项式展开计算 p(x + y)。"""
        y = to_rational(y)
        if y == 0:
            return self
        d = len(self._coeffs)
        out = [Fraction(0)] * d
        for n, c in enumerate(self._coeffs):
            if c == 0:
                continue
            for j in range(n + 1):
                out[j] += c * math.comb(n, j) * y ** (n - j)
        return Polynomial(out)

    def scale_argument(self, alpha: RationalLike) -> "Polynomial":
        """p(alpha * x)."""
        alpha = to_rational(alpha)
        return Polynomial(c * alpha**n for n, c in enumerate(self._coeffs))

    # ---- 显示 ----

    def to_json(self) -> list[str]:
        return [str(c) for c in self._coeffs]

    def __repr__(self) -> str:
        return f"Polynomial({self.to_json()!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for n, c in enumerate(self._coeffs):
            if c == 0:
                continue
            if n == 0:
                terms.append(str(c))
            elif n == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{n}")
        return " + ".join(terms)


def shift(p: Polynomial, y: RationalLike) -> Polynomial:
    return p.shift(y)

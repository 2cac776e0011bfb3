from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DivisionByZero, InvalidWeight, NotPrime


RationalLike = Union[int, Fraction]
Valuation = Union[int, float]  # float 仅用于 math.inf

INFINITY = math.inf


def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"expected int or Fraction, got {type(value).__name__}")
    return Fraction(value)


def q_bracket(x: int, q: RationalLike) -> Fraction:
    """[x]_q = (q^x - 1)/(q - 1)；q = 1 时取极限 [x]_1 = x。"""
    if x < 0:
        raise ValueError(f"q_bracket expects x >= 0, got {x}")
    q = to_rational(q)
    if q == 1:
        return Fraction(x)
    return (q**x - 1) / (q - 1)


def q_bracket_neg(x: int, q: RationalLike) -> Fraction:
    """[x]_{-q} = (1 - (-q)^x)/(1 + q)."""
    if x < 0:
        raise ValueError(f"q_bracket_neg expects x >= 0, got {x}")
    q = to_rational(q)
    if q == -1:
        raise DivisionByZero("[x]_{-q} is undefined at q = -1")
    return (1 - (-q) ** x) / (1 + q)


# 确定性 Miller-Rabin 底数组，每组在对应上界以内结论可靠
_MR_BASES: tuple[tuple[int, tuple[int, ...]], ...] = (
    (1_373_653, (2, 3)),
    (3_215_031_751, (2, 3, 5, 7)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (1 << 64, (2, 325, 9375, 28178, 450775, 9780504, 1795265022)),
)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _strong_probable_prime(n: int, base: int, d: int, s: int) -> bool:
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = pow(x, 2, n)
        if x == n - 1:
            return True
        if x == 1:
            return False
    return False


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n == sp:
            return True
        if n % sp == 0:
            return False
    if n >= 1 << 64:
        raise NotPrime(f"primality of {n} is not certified (n >= 2**64)")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = next(b for bound, b in _MR_BASES if n < bound)
    for base in bases:
        base %= n
        if base == 0:
            continue
        if not _strong_probable_prime(n, base, d, s):
            return False
    return True


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(r: RationalLike, p: int) -> Valuation:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    r = to_rational(r)
    if r == 0:
        return INFINITY
    return _int_valuation(abs(r.numerator), p) - _int_valuation(r.denominator, p)


def multinomial(parts: Iterable[int]) -> int:
    total, result = 0, 1
    for i in parts:
        total += i
        result *= math.comb(total, i)
    return result


@dataclass(frozen=True)
class QWeight:
    """加权积分的参数对 (q, zeta)。"""

    q: Fraction
    zeta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", to_rational(self.q))
        object.__setattr__(self, "zeta", to_rational(self.zeta))
        if self.q == -1:
            raise InvalidWeight("q = -1 makes [2]_q = 1 + q vanish")
        if 1 + self.q * self.zeta == 0:
            raise InvalidWeight(f"1 + q*zeta = 0 at q={self.q}, zeta={self.zeta}")

    @property
    def two_q(self) -> Fraction:
        """[2]_q = 1 + q."""
        return 1 + self.q

    @property
    def qz(self) -> Fraction:
        return self.q * self.zeta

    def power(self, d: int) -> "QWeight":
        return QWeight(self.q**d, self.zeta**d)

    def is_padic_admissible(self, p: int) -> bool:
        return padic_valuation(self.q - 1, p) >= 1 and padic_valuation(self.zeta - 1, p) >= 1

    def __str__(self) -> str:
        return f"(q={self.q}, zeta={self.zeta})"

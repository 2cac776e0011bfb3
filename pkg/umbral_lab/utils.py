from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .errors import ConfigError


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_RANGE_RE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


def parse_rational(text: str) -> Fraction:
    # 只接受 "a/b" 或整数，刻意不解析小数
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ConfigError(f"not a rational 'a/b' or integer: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ConfigError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(value: Union[int, Fraction]) -> str:
    return str(Fraction(value))


def parse_int_list(text: str) -> list[int]:
    """"1..6" 或 "1,3,5" -> [1, 2, ...]"""
    m = _RANGE_RE.match(text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise ConfigError(f"empty range: {text!r}")
        return list(range(lo, hi + 1))
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise ConfigError(f"empty list: {text!r}")
    try:
        return [int(s) for s in items]
    except ValueError:
        raise ConfigError(f"not an integer list: {text!r}")


def parse_rational_list(text: str) -> list[Fraction]:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise ConfigError(f"empty list: {text!r}")
    return [parse_rational(s) for s in items]

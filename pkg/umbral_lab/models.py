from __future__ import annotations

import math
from fractions import Fraction
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, field_validator, model_validator

from .numbers import QWeight, Valuation
from .polynomials import Polynomial
from .series import TruncatedSeries
from .utils import format_rational, parse_rational


def _coerce_rational(v: Any) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return parse_rational(v)
    raise ValueError(f"expected 'a/b' or an integer, got {v!r}")


Rational = Annotated[
    Fraction,
    BeforeValidator(_coerce_rational),
    PlainSerializer(format_rational, return_type=str),
]

# 精确命中时 valuation 为 +inf，序列化成 "inf"
ValuationField = Union[int, Literal["inf"]]


def valuation_field(v: Valuation) -> ValuationField:
    return "inf" if v == math.inf else int(v)


class _Model(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class WeightModel(_Model):
    q: Rational
    zeta: Rational

    @classmethod
    def from_weight(cls, w: QWeight) -> "WeightModel":
        return cls(q=w.q, zeta=w.zeta)

    def to_weight(self) -> QWeight:
        return QWeight(self.q, self.zeta)


class SeriesModel(_Model):
    coeffs: list[Rational]
    precision: int

    @classmethod
    def from_series(cls, f: TruncatedSeries) -> "SeriesModel":
        return cls(coeffs=list(f.coeffs), precision=f.precision)

    def to_series(self) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs, self.precision)


class QEulerTableModel(_Model):
    weight: WeightModel
    order: int = 1
    numbers: list[Rational]
    polynomials: list[list[Rational]]

    @classmethod
    def from_table(cls, table: Any) -> "QEulerTableModel":
        return cls(
            weight=WeightModel.from_weight(table.weight),
            order=table.order,
            numbers=list(table.numbers),
            polynomials=[list(p.coeffs) for p in table.polynomials],
        )

    def to_polynomials(self) -> list[Polynomial]:
        return [Polynomial(cs) for cs in self.polynomials]


class ConvolutionRow(_Model):
    k: int
    n: int
    table: Rational
    convolution: Rational
    status: Literal["pass", "fail"]


class OrderKReport(_Model):
    weight: WeightModel
    tables: list[QEulerTableModel]
    convolution: list[ConvolutionRow]


class CheckRow(_Model):
    identity: str
    weight: WeightModel
    params: str = ""
    status: Literal["pass", "fail"]
    lhs: Optional[str] = None
    rhs: Optional[str] = None


class VerifyReport(_Model):
    checks: list[CheckRow]
    numbers: list[QEulerTableModel] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)


class ZetaRow(_Model):
    M: int
    partial: Rational
    error: Rational


class ZetaReport(_Model):
    weight: WeightModel
    s: int
    x0: Rational
    target: Rational
    rows: list[ZetaRow]
    status: Literal["pass", "fail"]


class ValuationRow(_Model):
    level: int
    valuation: ValuationField


class PAdicReport(_Model):
    p: int
    q: Rational
    zeta: Rational
    moment: int
    x0: Rational = Fraction(0)
    rows: list[ValuationRow]
    lemma1: list[ValuationRow] = Field(default_factory=list)
    status: Literal["pass", "fail"] = "pass"


Command = Literal["numbers", "poly", "order-k", "verify", "zeta", "padic"]
OutputFormat = Literal["json", "csv", "pretty"]


class RunConfig(_Model):
    command: Command
    weights: list[WeightModel]
    n_max: int = Field(ge=0)
    # Sheffer 对需要 t 的系数，精度至少为 1
    precision: int = Field(ge=1)
    d_list: list[int] = Field(default_factory=lambda: [1, 3, 5])
    alpha_list: list[Rational] = Field(default_factory=lambda: [Fraction(2), Fraction(-1), Fraction(1, 3)])
    k_list: list[int] = Field(default_factory=lambda: [1, 2, 3])
    p: Optional[int] = None
    moment: int = Field(default=0, ge=0)
    levels: list[int] = Field(default_factory=list)
    x0: Rational = Fraction(0)
    output: OutputFormat = "pretty"
    budget: int = Field(ge=1)
    workers: int = Field(default=1, ge=1)

    @field_validator("levels")
    @classmethod
    def _sort_levels(cls, v: list[int]) -> list[int]:
        return sorted(set(v))

    @model_validator(mode="after")
    def _check(self) -> "RunConfig":
        if self.n_max > self.precision:
            raise ValueError(f"n_max={self.n_max} exceeds precision={self.precision}")
        if not self.weights:
            raise ValueError("at least one weight is required")
        if self.command == "verify" and not (self.d_list and self.alpha_list and self.k_list):
            raise ValueError("verify needs non-empty --d, --alpha and --k lists")
        if self.command == "order-k" and not self.k_list:
            raise ValueError("order-k needs a non-empty --k list")
        if any(d < 1 or d % 2 == 0 for d in self.d_list):
            raise ValueError(f"--d entries must be odd naturals, got {self.d_list}")
        if any(a == 0 for a in self.alpha_list):
            raise ValueError("--alpha entries must be nonzero")
        if any(k < 1 for k in self.k_list):
            raise ValueError(f"--k entries must be >= 1, got {self.k_list}")
        if self.command == "padic":
            if self.p is None:
                raise ValueError("padic needs --p")
            if not self.levels:
                raise ValueError("padic needs a non-empty --levels list")
            if min(self.levels) < 1:
                raise ValueError(f"padic levels must be >= 1, got {self.levels}")
        if self.command == "zeta":
            if not self.levels:
                raise ValueError("zeta needs a non-empty --levels list")
            if min(self.levels) < 0:
                raise ValueError(f"zeta truncation points must be >= 0, got {self.levels}")
        return self

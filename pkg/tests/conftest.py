from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from umbral_lab.numbers import QWeight
from umbral_lab.polynomials import Polynomial
from umbral_lab.series import TruncatedSeries
from umbral_lab.verify import DEFAULT_WEIGHTS


settings.register_profile(
    "exact",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


WEIGHT_PANEL = list(DEFAULT_WEIGHTS)
NONCLASSICAL_WEIGHTS = [w for w in WEIGHT_PANEL if (w.q, w.zeta) != (1, 1)]


@pytest.fixture(params=WEIGHT_PANEL, ids=str)
def weight(request) -> QWeight:
    return request.param


small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
nonzero_rationals = small_rationals.filter(lambda r: r != 0)


@st.composite
def polynomials(draw, max_degree: int = 8) -> Polynomial:
    return Polynomial(draw(st.lists(small_rationals, min_size=0, max_size=max_degree + 1)))


@st.composite
def series(draw, precision: int = 8, invertible: bool = False) -> TruncatedSeries:
    cs = draw(st.lists(small_rationals, min_size=precision + 1, max_size=precision + 1))
    if invertible and cs[0] == 0:
        cs[0] = Fraction(1)
    return TruncatedSeries(cs, precision)


@st.composite
def delta_series(draw, precision: int = 8) -> TruncatedSeries:
    cs = draw(st.lists(small_rationals, min_size=precision + 1, max_size=precision + 1))
    cs[0] = Fraction(0)
    if cs[1] == 0:
        cs[1] = draw(nonzero_rationals)
    return TruncatedSeries(cs, precision)


@st.composite
def weights(draw) -> QWeight:
    q = draw(small_rationals.filter(lambda r: r != -1))
    zeta = draw(small_rationals.filter(lambda z: 1 + q * z != 0))
    return QWeight(q, zeta)

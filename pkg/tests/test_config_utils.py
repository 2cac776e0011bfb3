from __future__ import annotations

from fractions import Fraction

import pytest

from umbral_lab.config import DEFAULT_BUDGET, DEFAULT_PRECISION, get_settings
from umbral_lab.errors import ConfigError
from umbral_lab.utils import format_rational, parse_int_list, parse_rational, parse_rational_list


@pytest.mark.parametrize(
    "text, value",
    [("3", Fraction(3)), ("-2/6", Fraction(-1, 3)), (" 5 / 7 ", Fraction(5, 7)), ("+4", Fraction(4))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["0.5", "1/0", "a/b", "", "1/-2", "1e3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ConfigError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(7) == "7"


def test_parse_lists():
    assert parse_int_list("1..6") == [1, 2, 3, 4, 5, 6]
    assert parse_int_list("1,3, 5") == [1, 3, 5]
    assert parse_rational_list("2,-1,1/3") == [Fraction(2), Fraction(-1), Fraction(1, 3)]
    with pytest.raises(ConfigError):
        parse_int_list("6..1")
    with pytest.raises(ConfigError):
        parse_int_list("1,x")
    with pytest.raises(ConfigError):
        parse_rational_list(",")


def test_settings_defaults(monkeypatch):
    for name in ("UMBRAL_LAB_BUDGET", "UMBRAL_LAB_PRECISION", "UMBRAL_LAB_WORKERS", "UMBRAL_LAB_LOG_LEVEL", "UMBRAL_LAB_LOG_FILE"):
        monkeypatch.delenv(name, raising=False)
    s = get_settings()
    assert (s.budget, s.precision, s.workers) == (DEFAULT_BUDGET, DEFAULT_PRECISION, 1)
    assert s.log_level == "WARNING"
    assert s.log_file is None


def test_settings_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("UMBRAL_LAB_BUDGET", "5000")
    monkeypatch.setenv("UMBRAL_LAB_WORKERS", "4")
    monkeypatch.setenv("UMBRAL_LAB_LOG_LEVEL", "debug")
    monkeypatch.setenv("UMBRAL_LAB_LOG_FILE", str(tmp_path / "run.log"))
    s = get_settings()
    assert s.budget == 5000 and s.workers == 4
    assert s.log_level == "DEBUG"
    assert s.log_file == (tmp_path / "run.log").resolve()


@pytest.mark.parametrize(
    "name, value",
    [("UMBRAL_LAB_BUDGET", "lots"), ("UMBRAL_LAB_PRECISION", "0"), ("UMBRAL_LAB_LOG_LEVEL", "loud")],
)
def test_settings_reject_bad_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        get_settings()

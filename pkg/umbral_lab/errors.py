from __future__ import annotations


class UmbralLabError(Exception):
    """所有库内错误的基类；exit_code 供 cli 映射为进程退出码。"""

    exit_code = 5


class DivisionByZero(UmbralLabError, ZeroDivisionError):
    pass


class NotPrime(UmbralLabError, ValueError):
    pass


class NotInvertible(UmbralLabError, ArithmeticError):
    pass


class CompositionDomain(UmbralLabError, ValueError):
    pass


class NotDelta(UmbralLabError, ValueError):
    pass


class InsufficientPrecision(UmbralLabError, ValueError):
    pass


class InvalidWeight(UmbralLabError, ValueError):
    exit_code = 3


class PoleAtNonpositive(UmbralLabError, ZeroDivisionError):
    pass


class BudgetExceeded(UmbralLabError):
    exit_code = 4


class ConfigError(UmbralLabError, ValueError):
    exit_code = 2

"""Exact non-negative rationals and definitional floor/remainder.

Nothing here touches floating point. Ratios are compared by
cross-multiplication on Python integers, which are arbitrary precision,
so the product width is never a concern.
"""

from __future__ import annotations

import enum
from math import gcd
from typing import Protocol

from .errors import DomainError

__all__ = [
    "Ordering",
    "Ratio",
    "ratio_cmp",
    "floor_div",
    "ceil_div",
    "rem",
    "rational_in_interval",
]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _check_natural(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}")


class Ratio:
    """Non-negative rational ``num/den`` stored exactly as given.

    The stored pair is not reduced; equality, ordering and hashing are
    value based, so ``Ratio(2, 4) == Ratio(1, 2)``.
    """

    __slots__ = ("num", "den")

    num: int
    den: int

    def __init__(self, num: int, den: int = 1) -> None:
        _check_natural("numerator", num)
        _check_natural("denominator", den)
        if den == 0:
            raise DomainError("denominator must be nonzero")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Ratio is immutable")

    def reduced(self) -> Ratio:
        g = gcd(self.num, self.den)
        return Ratio(self.num // g, self.den // g)

    def floor(self) -> int:
        return self.num // self.den

    def ceil(self) -> int:
        return -(-self.num // self.den)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ratio):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __lt__(self, other: Ratio) -> bool:
        return ratio_cmp(self, other) is Ordering.LESS

    def __le__(self, other: Ratio) -> bool:
        return ratio_cmp(self, other) is not Ordering.GREATER

    def __gt__(self, other: Ratio) -> bool:
        return ratio_cmp(self, other) is Ordering.GREATER

    def __ge__(self, other: Ratio) -> bool:
        return ratio_cmp(self, other) is not Ordering.LESS

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.num, r.den))

    def __repr__(self) -> str:
        return f"Ratio({self.num}, {self.den})"

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def approx(self) -> float:
        """Floating-point value, for display only."""
        return self.num / self.den


def ratio_cmp(a: Ratio, b: Ratio) -> Ordering:
    lhs = a.num * b.den
    rhs = b.num * a.den
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


def floor_div(x: int, y: int) -> int:
    """Greatest q with q*y <= x."""
    _check_natural("x", x)
    _check_natural("y", y)
    if y == 0:
        raise DomainError("division by zero")
    return x // y


def ceil_div(x: int, y: int) -> int:
    _check_natural("x", x)
    _check_natural("y", y)
    if y == 0:
        raise DomainError("division by zero")
    return -(-x // y)


def rem(x: int, y: int) -> int:
    """``x - floor_div(x, y) * y``, always in ``[0, y)``."""
    return x - floor_div(x, y) * y


class _IntervalLike(Protocol):
    lower: Ratio
    lower_inclusive: bool
    upper: Ratio
    upper_inclusive: bool


def rational_in_interval(x: Ratio, iv: _IntervalLike) -> bool:
    lo = ratio_cmp(x, iv.lower)
    if lo is Ordering.LESS or (lo is Ordering.EQUAL and not iv.lower_inclusive):
        return False
    hi = ratio_cmp(x, iv.upper)
    if hi is Ordering.GREATER or (hi is Ordering.EQUAL and not iv.upper_inclusive):
        return False
    return True

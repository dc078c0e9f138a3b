"""Exact admissible intervals for the ratio c/m.

Each scheme/capability pair has one optimal interval that is necessary
and sufficient for correctness over numerators ``[0, N]``.  The older
sufficient-only intervals (Granlund-Montgomery, Robison, Lemire et al.
2019) are reproduced for comparison reporting.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainError
from .rational import Ordering, Ratio, ceil_div, floor_div, ratio_cmp, rational_in_interval, rem

__all__ = [
    "Scheme",
    "Capability",
    "Source",
    "DivisionSpec",
    "BoundInterval",
    "ExtremalNumerator",
    "quotient_interval",
    "quotient_interval_multadd",
    "remainder_interval",
    "remainder_interval_multadd",
    "optimal_interval",
    "legacy_interval",
    "admits",
    "admitted_range",
    "extremal_numerators",
    "is_subinterval",
]


class Scheme(enum.Enum):
    MULTIPLY_SHIFT = "multiply-shift"          # floor(c*n / m)
    MULTIPLY_ADD_SHIFT = "multiply-add-shift"  # floor((c*n + c) / m)

    @property
    def addend_factor(self) -> int:
        return 1 if self is Scheme.MULTIPLY_ADD_SHIFT else 0


class Capability(enum.Enum):
    QUOTIENT = "quotient"
    QUOTIENT_AND_REMAINDER = "remainder"


class Source(enum.Enum):
    OPTIMAL = "optimal"
    GRANLUND_MONTGOMERY = "granlund-montgomery"
    ROBISON = "robison"
    LEMIRE2019 = "lemire2019"


@dataclass(frozen=True)
class DivisionSpec:
    """Divisor ``d`` and maximal numerator ``N``; numerators range over [0, N]."""

    d: int
    N: int

    def __post_init__(self) -> None:
        for name in ("d", "N"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"{name} must be an int")
        if self.d <= 0:
            raise DomainError("divisor must be positive")
        if self.N < self.d:
            raise DomainError(
                f"maximal numerator N={self.N} must satisfy N >= d={self.d}; "
                "the optimal bounds are only established for N >= d"
            )

    @classmethod
    def from_bits(cls, d: int, bits: int) -> DivisionSpec:
        if bits <= 0:
            raise DomainError("bit width must be positive")
        return cls(d, (1 << bits) - 1)


@dataclass(frozen=True)
class BoundInterval:
    lower: Ratio
    lower_inclusive: bool
    upper: Ratio
    upper_inclusive: bool
    scheme: Scheme
    capability: Capability
    source: Source = Source.OPTIMAL

    def __post_init__(self) -> None:
        if ratio_cmp(self.lower, self.upper) is not Ordering.LESS:
            raise DomainError(f"empty interval [{self.lower}, {self.upper})")
        if self.source is Source.OPTIMAL and not (
            self.lower_inclusive and not self.upper_inclusive
        ):
            raise DomainError("optimal intervals are lower-closed, upper-open")

    def __contains__(self, x: Ratio) -> bool:
        return rational_in_interval(x, self)

    def describe(self, reduce: bool = False) -> str:
        lo = self.lower.reduced() if reduce else self.lower
        hi = self.upper.reduced() if reduce else self.upper
        left = "[" if self.lower_inclusive else "("
        right = "]" if self.upper_inclusive else ")"
        return f"{left}{lo}, {hi}{right}"

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class ExtremalNumerator:
    value: int


def _quotient_k(spec: DivisionSpec) -> int:
    return spec.N - rem(spec.N + 1, spec.d)


def _multadd_k(spec: DivisionSpec) -> int:
    return spec.N - rem(spec.N, spec.d)


def quotient_interval(spec: DivisionSpec) -> BoundInterval:
    """``1/d <= c/m < (1 + 1/K)/d`` with ``K = N - rem(N+1, d)``."""
    k = _quotient_k(spec)
    return BoundInterval(
        Ratio(1, spec.d), True, Ratio(k + 1, k * spec.d), False,
        Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT,
    )


def quotient_interval_multadd(spec: DivisionSpec) -> BoundInterval:
    """``(1 - 1/(K'+1))/d <= c/m < 1/d`` with ``K' = N - rem(N, d)``."""
    k = _multadd_k(spec)
    return BoundInterval(
        Ratio(k, (k + 1) * spec.d), True, Ratio(1, spec.d), False,
        Scheme.MULTIPLY_ADD_SHIFT, Capability.QUOTIENT,
    )


def remainder_interval(spec: DivisionSpec) -> BoundInterval:
    """``1/d <= c/m < (1 + 1/N)/d``."""
    return BoundInterval(
        Ratio(1, spec.d), True, Ratio(spec.N + 1, spec.N * spec.d), False,
        Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT_AND_REMAINDER,
    )


def remainder_interval_multadd(spec: DivisionSpec) -> BoundInterval:
    """``(1 - 1/(N+1))/d <= c/m < 1/d``."""
    return BoundInterval(
        Ratio(spec.N, (spec.N + 1) * spec.d), True, Ratio(1, spec.d), False,
        Scheme.MULTIPLY_ADD_SHIFT, Capability.QUOTIENT_AND_REMAINDER,
    )


_OPTIMAL = {
    (Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT): quotient_interval,
    (Scheme.MULTIPLY_ADD_SHIFT, Capability.QUOTIENT): quotient_interval_multadd,
    (Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT_AND_REMAINDER): remainder_interval,
    (Scheme.MULTIPLY_ADD_SHIFT, Capability.QUOTIENT_AND_REMAINDER): remainder_interval_multadd,
}


def optimal_interval(spec: DivisionSpec, scheme: Scheme, capability: Capability) -> BoundInterval:
    return _OPTIMAL[scheme, capability](spec)


def legacy_interval(spec: DivisionSpec, source: Source) -> BoundInterval:
    """Published sufficient (not necessary) conditions, verbatim."""
    d, n = spec.d, spec.N
    if source is Source.GRANLUND_MONTGOMERY:
        return BoundInterval(
            Ratio(1, d), True, Ratio(n + 2, (n + 1) * d), True,
            Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT, source,
        )
    if source is Source.ROBISON:
        return BoundInterval(
            Ratio(n, (n + 1) * d), True, Ratio(1, d), False,
            Scheme.MULTIPLY_ADD_SHIFT, Capability.QUOTIENT, source,
        )
    if source is Source.LEMIRE2019:
        return BoundInterval(
            Ratio(1, d), True, Ratio(n + 2, (n + 1) * d), True,
            Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT_AND_REMAINDER, source,
        )
    raise DomainError(f"no legacy interval for source {source!r}")


def admits(iv: BoundInterval, c: int, m: int) -> bool:
    if m <= 0:
        raise DomainError("m must be positive")
    return rational_in_interval(Ratio(c, m), iv)


def admitted_range(iv: BoundInterval, m: int) -> range:
    """All integers c with c/m inside ``iv``; the interval is convex so this is a range."""
    if m <= 0:
        raise DomainError("m must be positive")
    lo_num, lo_den = iv.lower.num * m, iv.lower.den
    if iv.lower_inclusive:
        first = ceil_div(lo_num, lo_den)
    else:
        first = floor_div(lo_num, lo_den) + 1
    hi_num, hi_den = iv.upper.num * m, iv.upper.den
    if iv.upper_inclusive:
        last = floor_div(hi_num, hi_den)
    else:
        last = ceil_div(hi_num, hi_den) - 1
    return range(first, max(first, last + 1))


def extremal_numerators(spec: DivisionSpec, scheme: Scheme) -> list[ExtremalNumerator]:
    """The distinguished hardest numerator first, then the rest of [N-d+1, N].

    For multiply-shift this minimises ``1 + (d - rem(n, d))/n``; for
    multiply-add it maximises ``(n - rem(n, d))/(n + 1)``.  Every other
    candidate that matters for the interval endpoints lies in the window.
    """
    if scheme is Scheme.MULTIPLY_SHIFT:
        v = _quotient_k(spec)
    else:
        v = _multadd_k(spec)
    window = range(max(0, spec.N - spec.d + 1), spec.N + 1)
    return [ExtremalNumerator(v)] + [ExtremalNumerator(n) for n in window if n != v]


def is_subinterval(inner: BoundInterval, outer: BoundInterval) -> bool:
    """Endpoint containment, respecting inclusivity."""
    lo = ratio_cmp(inner.lower, outer.lower)
    if lo is Ordering.LESS or (lo is Ordering.EQUAL and inner.lower_inclusive and not outer.lower_inclusive):
        return False
    hi = ratio_cmp(inner.upper, outer.upper)
    if hi is Ordering.GREATER or (hi is Ordering.EQUAL and inner.upper_inclusive and not outer.upper_inclusive):
        return False
    return True

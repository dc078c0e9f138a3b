"""Search for concrete constants (c, m) inside an admissible interval."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .bounds import (
    BoundInterval,
    Capability,
    DivisionSpec,
    Scheme,
    admits,
    admitted_range,
    optimal_interval,
)
from .errors import DomainError, SearchExhausted
from .rational import Ratio

__all__ = [
    "MMode",
    "Prefer",
    "SearchConstraints",
    "MagicConstants",
    "smallest_c_for_m",
    "smallest_pow2_m",
    "smallest_any_m",
    "simplest_fraction",
    "find_constants",
    "choose_scheme",
]


class MMode(enum.Enum):
    POWER_OF_TWO = "pow2"
    ANY_INTEGER = "any"


class Prefer(enum.Enum):
    SMALLEST_M = "m"
    SMALLEST_C = "c"


@dataclass(frozen=True)
class SearchConstraints:
    m_mode: MMode = MMode.POWER_OF_TWO
    # None picks a budget wide enough that a solution always exists.
    max_product_bits: int | None = None
    prefer: Prefer = Prefer.SMALLEST_M

    def budget_for(self, spec: DivisionSpec, iv: BoundInterval) -> int:
        if self.max_product_bits is None:
            return _guaranteed_bits(spec, iv)
        if self.max_product_bits < spec.N.bit_length() + 1:
            raise DomainError(
                f"max_product_bits={self.max_product_bits} cannot hold N={spec.N}"
            )
        return self.max_product_bits


def _guaranteed_bits(spec: DivisionSpec, iv: BoundInterval) -> int:
    # Any m >= 1/(upper - lower) has an admissible c, and a power of two
    # at most twice that.  c is then below 2*m*upper.
    width_num = iv.upper.num * iv.lower.den - iv.lower.num * iv.upper.den
    width_den = iv.upper.den * iv.lower.den
    m_needed = -(-width_den // width_num)
    m_pow2 = 1 << (m_needed - 1).bit_length()
    c_max = 2 * m_pow2 * iv.upper.num // iv.upper.den + 1
    return (c_max * (spec.N + 1)).bit_length()


@dataclass(frozen=True)
class MagicConstants:
    c: int
    m: int
    scheme: Scheme
    capability: Capability
    spec: DivisionSpec
    shift: int | None = field(default=None)

    def __post_init__(self) -> None:
        if self.m <= 0:
            raise DomainError("m must be positive")
        if self.c < 0:
            raise DomainError("c must be non-negative")
        if self.shift is None:
            if self.m & (self.m - 1) == 0:
                object.__setattr__(self, "shift", self.m.bit_length() - 1)
        elif self.m != 1 << self.shift:
            raise DomainError(f"m={self.m} is not 2**{self.shift}")

    @property
    def d(self) -> int:
        return self.spec.d

    @property
    def N(self) -> int:
        return self.spec.N

    @property
    def interval(self) -> BoundInterval:
        return optimal_interval(self.spec, self.scheme, self.capability)

    @property
    def ratio(self) -> Ratio:
        return Ratio(self.c, self.m)

    @property
    def product_bits(self) -> int:
        """Bits needed for the widest intermediate, ``c*N + c``."""
        return (self.c * (self.N + 1)).bit_length()

    def is_admitted(self) -> bool:
        return admits(self.interval, self.c, self.m)


def _normalized(iv: BoundInterval, spec: DivisionSpec, c: int, m: int) -> bool:
    # Remainder formulas are only meaningful for c in [0, m).  With d == 1
    # every admissible ratio is >= 1, so the restriction cannot apply there.
    if iv.capability is Capability.QUOTIENT_AND_REMAINDER and spec.d > 1:
        return c < m
    return True


def smallest_c_for_m(iv: BoundInterval, m: int) -> int | None:
    """Smallest integer c with c/m in ``iv``, or None when there is none."""
    cs = admitted_range(iv, m)
    return cs[0] if cs else None


def smallest_pow2_m(
    iv: BoundInterval, spec: DivisionSpec, constraints: SearchConstraints = SearchConstraints()
) -> MagicConstants | None:
    if constraints.m_mode is not MMode.POWER_OF_TWO:
        raise DomainError("smallest_pow2_m requires m_mode=POWER_OF_TWO")
    budget = constraints.budget_for(spec, iv)
    s = 0
    while True:
        m = 1 << s
        # c only grows with m, so once the lower endpoint alone busts the
        # budget no larger power of two can help.
        floor_c = iv.lower.num * m // iv.lower.den
        if (floor_c * (spec.N + 1)).bit_length() > budget:
            return None
        c = smallest_c_for_m(iv, m)
        if c is not None and _normalized(iv, spec, c, m):
            if (c * (spec.N + 1)).bit_length() <= budget:
                return MagicConstants(c, m, iv.scheme, iv.capability, spec, shift=s)
        s += 1


def simplest_fraction(
    lo: Ratio, lo_inclusive: bool, hi: Ratio | None, hi_inclusive: bool
) -> tuple[int, int]:
    """The fraction p/q with the smallest q (and then smallest p) in the interval.

    ``hi=None`` means unbounded above.  Works by continued-fraction
    descent, so it costs O(log) steps however narrow the interval.
    """
    ln, ld = lo.num, lo.den
    whole = ln // ld
    cand = whole if (ln % ld == 0 and lo_inclusive) else whole + 1
    if hi is None or cand * hi.den < hi.num or (cand * hi.den == hi.num and hi_inclusive):
        return cand, 1
    # No integer inside: strip the integer part and recurse on the reciprocal.
    frac_lo_num = ln - whole * ld
    frac_hi_num = hi.num - whole * hi.den
    new_lo = Ratio(hi.den, frac_hi_num)
    new_hi = Ratio(ld, frac_lo_num) if frac_lo_num else None
    p, q = simplest_fraction(new_lo, hi_inclusive, new_hi, lo_inclusive)
    return whole * p + q, p


def smallest_any_m(
    iv: BoundInterval,
    spec: DivisionSpec,
    constraints: SearchConstraints = SearchConstraints(m_mode=MMode.ANY_INTEGER),
) -> MagicConstants:
    """Smallest m admitting an integer c; c minimal for that m.

    Equivalent to scanning m = 1, 2, 3, ... but computed directly.  The
    same pair also minimises c, so ``prefer`` does not change the result.
    """
    if constraints.m_mode is not MMode.ANY_INTEGER:
        raise DomainError("smallest_any_m requires m_mode=ANY_INTEGER")
    budget = constraints.budget_for(spec, iv)
    _, m = simplest_fraction(iv.lower, iv.lower_inclusive, iv.upper, iv.upper_inclusive)
    c = smallest_c_for_m(iv, m)
    assert c is not None
    if not _normalized(iv, spec, c, m):
        raise SearchExhausted(f"no normalized c < m exists for {iv}")
    if (c * (spec.N + 1)).bit_length() > budget:
        raise SearchExhausted(
            f"smallest solution c={c}, m={m} needs {(c * (spec.N + 1)).bit_length()} bits > {budget}"
        )
    return MagicConstants(c, m, iv.scheme, iv.capability, spec)


def find_constants(
    spec: DivisionSpec,
    scheme: Scheme,
    capability: Capability,
    constraints: SearchConstraints = SearchConstraints(),
) -> MagicConstants:
    iv = optimal_interval(spec, scheme, capability)
    if constraints.m_mode is MMode.ANY_INTEGER:
        return smallest_any_m(iv, spec, constraints)
    mc = smallest_pow2_m(iv, spec, constraints)
    if mc is None:
        raise SearchExhausted(f"no power-of-two m within the width budget for {iv}")
    return mc


_SCHEME_RANK = {Scheme.MULTIPLY_SHIFT: 0, Scheme.MULTIPLY_ADD_SHIFT: 1}


def choose_scheme(
    spec: DivisionSpec,
    capability: Capability,
    constraints: SearchConstraints = SearchConstraints(),
) -> MagicConstants:
    """Best of both schemes; multiply-shift wins ties since it saves an add."""
    found = []
    for scheme in Scheme:
        try:
            found.append(find_constants(spec, scheme, capability, constraints))
        except SearchExhausted:
            continue
    if not found:
        raise SearchExhausted(f"no constants for d={spec.d}, N={spec.N} within budget")
    if constraints.prefer is Prefer.SMALLEST_M:
        key = lambda mc: (mc.m, mc.c, _SCHEME_RANK[mc.scheme])
    else:
        key = lambda mc: (mc.c, mc.m, _SCHEME_RANK[mc.scheme])
    return min(found, key=key)

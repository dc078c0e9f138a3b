"""Apply magic constants: quotient, remainder, divisibility and rounding."""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import Capability, DivisionSpec, Scheme
from .errors import CapabilityError, DomainError, OutOfRangeError
from .finder import MMode, MagicConstants, SearchConstraints, find_constants

__all__ = [
    "EvalProfile",
    "eval_quotient",
    "eval_remainder",
    "is_divisible",
    "round_nearest_half_up",
    "round_nearest_half_down",
    "round_half_even",
    "Rounder",
]


@dataclass(frozen=True)
class EvalProfile:
    """Word width of n and the width guaranteed for ``c*n + c``."""

    word_bits: int
    product_bits: int

    @classmethod
    def for_constants(cls, mc: MagicConstants) -> EvalProfile:
        word = mc.N.bit_length()
        return cls(word, max(mc.product_bits, (mc.m * mc.d).bit_length()))

    def check(self, mc: MagicConstants) -> None:
        if mc.N.bit_length() > self.word_bits:
            raise OutOfRangeError(f"N={mc.N} does not fit in {self.word_bits} bits")
        need = max(mc.product_bits, (mc.m * mc.d).bit_length())
        if need > self.product_bits:
            raise OutOfRangeError(
                f"constants need {need}-bit products, profile offers {self.product_bits}"
            )


def _product(mc: MagicConstants, n: int) -> int:
    if n < 0:
        raise DomainError("numerator must be non-negative")
    if n > mc.N:
        raise OutOfRangeError(f"n={n} exceeds the guaranteed range [0, {mc.N}]")
    if mc.scheme is Scheme.MULTIPLY_ADD_SHIFT:
        return mc.c * n + mc.c
    return mc.c * n


def _require_remainder(mc: MagicConstants) -> None:
    if mc.capability is not Capability.QUOTIENT_AND_REMAINDER:
        raise CapabilityError("constants were derived for the quotient only")


def eval_quotient(mc: MagicConstants, n: int) -> int:
    p = _product(mc, n)
    if mc.shift is not None:
        return p >> mc.shift
    return p // mc.m


def _low_part(mc: MagicConstants, p: int) -> int:
    if mc.shift is not None:
        return p & (mc.m - 1)
    return p % mc.m


def eval_remainder(mc: MagicConstants, n: int) -> int:
    _require_remainder(mc)
    low = _low_part(mc, _product(mc, n)) * mc.d
    if mc.shift is not None:
        return low >> mc.shift
    return low // mc.m


def is_divisible(mc: MagicConstants, n: int) -> bool:
    _require_remainder(mc)
    low = _low_part(mc, _product(mc, n))
    if n == 0:
        # The multiply-add test sees rem(c, m) = c here, which is not < c.
        return True
    return low < mc.c


def _check_rounding(mc: MagicConstants, d: int, z: int) -> None:
    if mc.d != d:
        raise DomainError(f"constants are for d={mc.d}, not d={d}")
    if z > mc.N:
        raise OutOfRangeError(
            f"shifted numerator {z} exceeds constant range [0, {mc.N}]; "
            "build constants for N + d//2 (see Rounder)"
        )


def round_nearest_half_up(n: int, d: int, mc: MagicConstants) -> int:
    z = n + d // 2
    _check_rounding(mc, d, z)
    return eval_quotient(mc, z)


def round_nearest_half_down(n: int, d: int, mc: MagicConstants) -> int:
    z = n + (d + 1) // 2 - 1
    _check_rounding(mc, d, z)
    return eval_quotient(mc, z)


def round_half_even(n: int, d: int, mc: MagicConstants) -> int:
    if d % 2:
        return round_nearest_half_up(n, d, mc)
    _require_remainder(mc)
    z = n + d // 2
    _check_rounding(mc, d, z)
    q = eval_quotient(mc, z)
    if q & 1 and is_divisible(mc, z):
        return q - 1
    return q


class Rounder:
    """Rounded division of n in [0, N] by d with constants sized for it.

    The rounding formulas divide ``n + d//2`` (or less), so constants must
    cover ``N + d//2``; this class derives them instead of trusting the
    caller.  Remainder-capable constants are used so half-even can reuse
    the quotient's product for its divisibility check.
    """

    def __init__(self, d: int, N: int, scheme: Scheme = Scheme.MULTIPLY_SHIFT,
                 m_mode: MMode = MMode.POWER_OF_TWO) -> None:
        if d <= 0:
            raise DomainError("divisor must be positive")
        self.d = d
        self.N = N
        spec = DivisionSpec(d, max(N + d // 2, d))
        self.constants = find_constants(
            spec, scheme, Capability.QUOTIENT_AND_REMAINDER, SearchConstraints(m_mode)
        )

    def _check(self, n: int) -> None:
        if n > self.N:
            raise OutOfRangeError(f"n={n} exceeds [0, {self.N}]")

    def half_up(self, n: int) -> int:
        self._check(n)
        return round_nearest_half_up(n, self.d, self.constants)

    def half_down(self, n: int) -> int:
        self._check(n)
        return round_nearest_half_down(n, self.d, self.constants)

    def half_even(self, n: int) -> int:
        self._check(n)
        return round_half_even(n, self.d, self.constants)

"""Ground truth by brute force.

Reference values come only from Python's floor division and modulo on
non-negative integers.  The formulas under test are recomputed here from
(c, m, d) directly rather than through the evaluator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .bounds import (
    BoundInterval,
    Capability,
    DivisionSpec,
    Scheme,
    Source,
    admits,
    admitted_range,
    extremal_numerators,
    legacy_interval,
    optimal_interval,
)
from .finder import MagicConstants

__all__ = [
    "Kind",
    "Counterexample",
    "VerificationReport",
    "Witness",
    "TightnessReport",
    "LegacyGap",
    "MinimalityProof",
    "DEFAULT_BUDGET",
    "formula_value",
    "reference_value",
    "find_counterexample",
    "screen_counterexample",
    "verify_exhaustive",
    "verify_pair",
    "check_tightness",
    "legacy_gap_report",
    "exclude_all_c",
]

DEFAULT_BUDGET = 1 << 24

ZERO_EDGE_NOTE = (
    "raw multiply-add divisibility test rem(c*n + c, m) < c reports n=0 as "
    "not divisible; the shipped predicate special-cases n=0"
)


class Kind(enum.Enum):
    QUOTIENT = "quotient"
    REMAINDER = "remainder"
    DIVISIBILITY = "divisibility"


@dataclass(frozen=True)
class Counterexample:
    n: int
    expected: int
    actual: int
    kind: Kind


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    checked_count: int
    counterexample: Counterexample | None = None
    notes: tuple[str, ...] = ()


def reference_value(n: int, d: int, kind: Kind) -> int:
    if kind is Kind.QUOTIENT:
        return n // d
    if kind is Kind.REMAINDER:
        return n % d
    return int(n % d == 0)


def formula_value(c: int, m: int, d: int, n: int, scheme: Scheme, kind: Kind,
                  zero_edge: bool = False) -> int:
    """The constant-based formula for one numerator.

    ``zero_edge`` makes the divisibility test report n=0 as divisible,
    which the raw multiply-add test does not.
    """
    p = c * n + c if scheme is Scheme.MULTIPLY_ADD_SHIFT else c * n
    if kind is Kind.QUOTIENT:
        return p // m
    if kind is Kind.REMAINDER:
        return (p % m) * d // m
    if zero_edge and n == 0:
        return 1
    return int(p % m < c)


def _first_failure(c, m, d, numerators, scheme, kinds, zero_edge=False):
    for n in numerators:
        for kind in kinds:
            want = reference_value(n, d, kind)
            got = formula_value(c, m, d, n, scheme, kind, zero_edge)
            if got != want:
                return Counterexample(n, want, got, kind)
    return None


def _as_kinds(kind) -> tuple[Kind, ...]:
    return (kind,) if isinstance(kind, Kind) else tuple(kind)


def screen_counterexample(c: int, m: int, d: int, N: int, scheme: Scheme,
                          kind: Kind | tuple[Kind, ...] = Kind.QUOTIENT) -> Counterexample | None:
    """Check only the extremal numerators (hardest value, then [N-d+1, N])."""
    kinds = _as_kinds(kind)
    if N < d:
        window = range(N + 1)
    else:
        window = [e.value for e in extremal_numerators(DivisionSpec(d, N), scheme)]
    return _first_failure(c, m, d, window, scheme, kinds)


def find_counterexample(c: int, m: int, d: int, N: int, scheme: Scheme,
                        kind: Kind | tuple[Kind, ...] = Kind.QUOTIENT,
                        fast: bool = False) -> Counterexample | None:
    """Smallest n in [0, N] where the formula disagrees with the reference.

    With ``fast=True`` the extremal numerators are screened first and a
    hit there is returned as is, so it need not be the smallest failure.
    Presence and absence always match the full scan.
    """
    if m <= 0 or d <= 0:
        raise ValueError("m and d must be positive")
    kinds = _as_kinds(kind)
    if fast:
        hit = screen_counterexample(c, m, d, N, scheme, kinds)
        if hit is not None:
            return hit
    return _first_failure(c, m, d, range(N + 1), scheme, kinds)


def _kinds_for(capability: Capability) -> tuple[Kind, ...]:
    if capability is Capability.QUOTIENT_AND_REMAINDER:
        return (Kind.QUOTIENT, Kind.REMAINDER, Kind.DIVISIBILITY)
    return (Kind.QUOTIENT,)


def verify_pair(c: int, m: int, d: int, N: int, scheme: Scheme, kinds: tuple[Kind, ...],
                budget: int = DEFAULT_BUDGET) -> VerificationReport:
    if N + 1 > budget:
        raise ValueError(f"N={N} exceeds the exhaustive budget of {budget} numerators")
    cx = _first_failure(c, m, d, range(N + 1), scheme, kinds, zero_edge=True)
    notes = ()
    if Kind.DIVISIBILITY in kinds and formula_value(c, m, d, 0, scheme, Kind.DIVISIBILITY) != 1:
        notes = (ZERO_EDGE_NOTE,)
    if cx is None:
        return VerificationReport(True, N + 1, None, notes)
    return VerificationReport(False, cx.n + 1, cx, notes)


def verify_exhaustive(mc: MagicConstants, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Check every n in [0, N]; quotient, plus remainder and divisibility when capable."""
    return verify_pair(mc.c, mc.m, mc.d, mc.N, mc.scheme, _kinds_for(mc.capability), budget)


@dataclass(frozen=True)
class Witness:
    c: int
    m: int
    counterexample_n: int | None
    t: int


@dataclass(frozen=True)
class TightnessReport:
    interval: BoundInterval
    lower_witnesses: tuple[Witness, ...]
    upper_witnesses: tuple[Witness, ...]

    @property
    def lower_witness(self) -> Witness | None:
        return self.lower_witnesses[0] if self.lower_witnesses else None

    @property
    def upper_witness(self) -> Witness | None:
        return self.upper_witnesses[0] if self.upper_witnesses else None

    @property
    def inconclusive(self) -> list[tuple[str, int]]:
        out = [("lower", w.t) for w in self.lower_witnesses if w.counterexample_n is None]
        out += [("upper", w.t) for w in self.upper_witnesses if w.counterexample_n is None]
        return out

    @property
    def conclusive(self) -> bool:
        return bool(self.lower_witnesses and self.upper_witnesses) and not self.inconclusive


def check_tightness(spec: DivisionSpec, scheme: Scheme, capability: Capability,
                    ts: tuple[int, ...] = (1, 2, 3)) -> TightnessReport:
    """Probe ratios just outside the interval; each must have a counterexample.

    Upper: c/m equal to the excluded upper endpoint, c = t*num, m = t*den.
    Lower: one step of 1/m below the included lower endpoint at m = t*den.
    A missing counterexample is recorded with ``counterexample_n=None``.
    """
    iv = optimal_interval(spec, scheme, capability)
    kinds = _kinds_for(capability)[:2]
    hi = iv.upper.reduced()
    lo = iv.lower.reduced()
    uppers, lowers = [], []
    for t in ts:
        c, m = t * hi.num, t * hi.den
        cx = find_counterexample(c, m, spec.d, spec.N, scheme, kinds)
        uppers.append(Witness(c, m, None if cx is None else cx.n, t))
        c, m = t * lo.num - 1, t * lo.den
        if c >= 0:
            cx = find_counterexample(c, m, spec.d, spec.N, scheme, kinds)
            lowers.append(Witness(c, m, None if cx is None else cx.n, t))
        else:
            lowers.append(Witness(c, m, None, t))
    return TightnessReport(iv, tuple(lowers), tuple(uppers))


_LEGACY_PAIRING = {
    Source.GRANLUND_MONTGOMERY: (Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT),
    Source.ROBISON: (Scheme.MULTIPLY_ADD_SHIFT, Capability.QUOTIENT),
    Source.LEMIRE2019: (Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT_AND_REMAINDER),
}


@dataclass(frozen=True)
class LegacyGap:
    source: Source
    optimal: BoundInterval
    legacy: BoundInterval
    admitted_by_optimal_only: tuple[tuple[int, int], ...]
    all_verified: bool
    failures: tuple[tuple[int, int], ...] = field(default=())


def legacy_gap_report(spec: DivisionSpec, m_max: int = 1024,
                      sources: tuple[Source, ...] = tuple(_LEGACY_PAIRING)) -> list[LegacyGap]:
    """Pairs (c, m), m <= m_max, accepted by the optimal bound but not the legacy one."""
    if m_max > 4096:
        raise ValueError("legacy gap enumeration is limited to m_max <= 4096")
    out = []
    for source in sources:
        scheme, capability = _LEGACY_PAIRING[source]
        opt = optimal_interval(spec, scheme, capability)
        old = legacy_interval(spec, source)
        gap, bad = [], []
        for m in range(1, m_max + 1):
            for c in admitted_range(opt, m):
                if capability is Capability.QUOTIENT_AND_REMAINDER and spec.d > 1 and c >= m:
                    continue
                if admits(old, c, m):
                    continue
                gap.append((c, m))
                rep = verify_pair(c, m, spec.d, spec.N, scheme, _kinds_for(capability))
                if not rep.passed:
                    bad.append((c, m))
        out.append(LegacyGap(source, opt, old, tuple(gap), not bad, tuple(bad)))
    return out


@dataclass(frozen=True)
class MinimalityProof:
    """Every multiplier fails at a given m.

    ``witnesses`` maps each c below ``cap`` to a failing numerator.  Any
    c >= cap has c*d >= 2m and so already fails at n = d; ``cap_witness``
    records that numerator for c = cap.
    """

    m: int
    witnesses: dict[int, int]
    cap: int
    cap_witness: int | None

    @property
    def complete(self) -> bool:
        return self.cap_witness is not None and all(
            n is not None for n in self.witnesses.values()
        )


def exclude_all_c(m: int, d: int, N: int, scheme: Scheme = Scheme.MULTIPLY_SHIFT) -> MinimalityProof:
    """Quotient-formula failure for every c at this m (full ascending scan)."""
    if N < d:
        raise ValueError("the cap argument needs n = d inside [0, N]")
    cap = -(-2 * m // d)
    cs = np.arange(cap, dtype=object if (cap * (N + 1)).bit_length() > 62 else np.int64)
    first = np.full(cap, -1, dtype=np.int64)
    alive = np.arange(cap)
    add = scheme is Scheme.MULTIPLY_ADD_SHIFT
    for n in range(N + 1):
        if not len(alive):
            break
        c = cs[alive]
        p = c * n + c if add else c * n
        bad = np.asarray((p // m) != n // d, dtype=bool)
        first[alive[bad]] = n
        alive = alive[~bad]
    witnesses = {int(c): (int(n) if n >= 0 else None) for c, n in zip(range(cap), first)}
    cx = _first_failure(cap, m, d, [d], scheme, (Kind.QUOTIENT,))
    return MinimalityProof(m, witnesses, cap, None if cx is None else cx.n)

import random

import pytest

from divmagic import oracle
from divmagic.audit import iff_cell, run_sweep, tightness_cell
from divmagic.bounds import Capability, DivisionSpec, Scheme, Source
from divmagic.finder import MagicConstants
from divmagic.oracle import (
    ZERO_EDGE_NOTE,
    Kind,
    check_tightness,
    exclude_all_c,
    find_counterexample,
    legacy_gap_report,
    screen_counterexample,
    verify_exhaustive,
    verify_pair,
)

Q, QR = Capability.QUOTIENT, Capability.QUOTIENT_AND_REMAINDER
SHIFT, ADD = Scheme.MULTIPLY_SHIFT, Scheme.MULTIPLY_ADD_SHIFT


def test_verify_examples():
    rep = verify_exhaustive(MagicConstants(7, 32, SHIFT, QR, DivisionSpec(5, 10)))
    assert rep.passed and rep.checked_count == 11 and rep.counterexample is None
    rep = verify_exhaustive(MagicConstants(86, 256, SHIFT, Q, DivisionSpec(3, 255)))
    assert not rep.passed
    cx = rep.counterexample
    # smallest failure; 86*128/256 = 43 exactly while 128 // 3 = 42
    assert (cx.n, cx.expected, cx.actual, cx.kind) == (128, 42, 43, Kind.QUOTIENT)
    for d in range(1, 40):
        assert verify_exhaustive(MagicConstants(1, d, SHIFT, Q, DivisionSpec(d, 5 * d))).passed


def test_counterexample_examples():
    cx = find_counterexample(86, 256, 3, 255, SHIFT, Kind.QUOTIENT)
    assert cx.n == 128
    fast = find_counterexample(86, 256, 3, 255, SHIFT, Kind.QUOTIENT, fast=True)
    # the extremal screen hits n = 255 - rem(256, 3) = 254 first
    assert (fast.n, fast.expected, fast.actual) == (254, 84, 85)
    assert find_counterexample(171, 512, 3, 255, SHIFT) is None
    assert find_counterexample(171, 512, 3, 255, SHIFT, fast=True) is None
    assert find_counterexample(2, 11, 5, 12, ADD) is None
    assert find_counterexample(2, 11, 5, 13, ADD) is None  # floor(28/11) = 2 = floor(13/5)
    assert (2 * 13 + 2) // 11 == 13 // 5


def test_zero_edge_note():
    rep = verify_exhaustive(MagicConstants(2, 11, ADD, QR, DivisionSpec(5, 10)))
    assert rep.passed and rep.notes == (ZERO_EDGE_NOTE,)
    raw = find_counterexample(2, 11, 5, 10, ADD, Kind.DIVISIBILITY)
    assert raw.n == 0 and (raw.expected, raw.actual) == (1, 0)
    assert verify_exhaustive(MagicConstants(7, 32, SHIFT, QR, DivisionSpec(5, 10))).notes == ()


def test_tightness_examples():
    rep = check_tightness(DivisionSpec(5, 10), SHIFT, QR)
    assert (rep.upper_witness.c, rep.upper_witness.m) == (11, 50)
    assert rep.upper_witness.counterexample_n is not None
    rep = check_tightness(DivisionSpec(5, 10), SHIFT, Q)
    assert (rep.lower_witness.c, rep.lower_witness.m, rep.lower_witness.counterexample_n) == (0, 5, 5)
    rep = check_tightness(DivisionSpec(5, 12), ADD, Q)
    assert find_counterexample(2, 11, 5, 12, ADD) is None
    w = rep.lower_witness
    assert (w.c, w.m) == (1, 11) and 5 <= w.counterexample_n <= 9
    assert rep.conclusive and rep.inconclusive == []
    assert [w.t for w in rep.upper_witnesses] == [1, 2, 3]


def test_legacy_gap_examples():
    (lem,) = legacy_gap_report(DivisionSpec(5, 10), 64, (Source.LEMIRE2019,))
    assert (7, 32) in lem.admitted_by_optimal_only and lem.all_verified
    (rob,) = legacy_gap_report(DivisionSpec(5, 12), 64, (Source.ROBISON,))
    assert (2, 11) in rob.admitted_by_optimal_only and rob.all_verified
    (rob,) = legacy_gap_report(DivisionSpec(5, 10), 256, (Source.ROBISON,))
    assert rob.admitted_by_optimal_only == ()
    with pytest.raises(ValueError):
        legacy_gap_report(DivisionSpec(5, 10), 5000)


def test_all_legacy_sources_verify():
    for d in range(1, 12):
        for N in (d, d + 1, 2 * d + 1, 3 * d + 2):
            for gap in legacy_gap_report(DivisionSpec(d, N), 128):
                assert gap.all_verified, gap


def test_reference_never_uses_bounds_or_evaluator(monkeypatch):
    def boom(*a, **k):
        raise AssertionError("oracle reference touched derived logic")

    for name in ("admits", "admitted_range", "optimal_interval", "legacy_interval"):
        monkeypatch.setattr(oracle, name, boom)
    assert find_counterexample(86, 256, 3, 255, SHIFT).n == 128
    assert verify_pair(7, 32, 5, 10, SHIFT, (Kind.QUOTIENT, Kind.REMAINDER, Kind.DIVISIBILITY)).passed


def test_screen_agrees_with_full_scan_sample():
    rng = random.Random(11)
    for _ in range(1500):
        d = rng.randint(1, 40)
        N = rng.randint(d, 6 * d + 10)
        m = rng.randint(1, 300)
        # bias towards c/m near 1/d so both outcomes occur
        c = max(0, -(-m // d) + rng.randint(-2, 2))
        scheme = rng.choice(list(Scheme))
        full = find_counterexample(c, m, d, N, scheme, Kind.QUOTIENT)
        assert (screen_counterexample(c, m, d, N, scheme, Kind.QUOTIENT) is None) == (full is None)


def test_budget_enforced():
    with pytest.raises(ValueError):
        verify_pair(1, 3, 3, 100, SHIFT, (Kind.QUOTIENT,), budget=50)


def test_exclude_all_c():
    proof = exclude_all_c(256, 3, 255)
    assert proof.complete and proof.cap == 171
    assert proof.witnesses[86] == 128
    # at m=512 c=171 survives, so the proof is incomplete
    assert not exclude_all_c(512, 3, 255).complete


def test_iff_cells_small():
    for d, N in [(2, 2), (5, 10), (5, 12), (7, 20)]:
        cell = iff_cell(d, N, m_max=128)
        assert cell.violations == []
        assert cell.zero_edge == cell.admitted["divisibility, multiply-add"] > 0


def test_iff_cell_detects_a_wrong_bound(monkeypatch):
    from divmagic import audit
    from divmagic.bounds import BoundInterval
    from divmagic.rational import Ratio

    real = audit.optimal_interval

    def skewed(spec, scheme, capability):
        iv = real(spec, scheme, capability)
        if scheme is SHIFT and capability is Q:
            # widen the upper endpoint slightly: must be caught
            return BoundInterval(iv.lower, True, Ratio(iv.upper.num * 50 + 1, iv.upper.den * 50), False,
                                 iv.scheme, iv.capability)
        return iv

    monkeypatch.setattr(audit, "optimal_interval", skewed)
    cell = iff_cell(5, 10, m_max=256)
    assert any(v.detail == "admitted but fails" for v in cell.violations)


def test_run_sweep_parallel_is_deterministic():
    serial = run_sweep(iff_cell, range(2, 5), m_max=64)
    par = run_sweep(iff_cell, range(2, 5), jobs=2, m_max=64)
    assert [(c.d, c.N, c.admitted, c.violations) for c in serial] == [
        (c.d, c.N, c.admitted, c.violations) for c in par
    ]
    assert [(c.d, c.N) for c in serial] == sorted((c.d, c.N) for c in serial)


def test_tightness_cell():
    for rep in tightness_cell(9, 26):
        assert rep.conclusive

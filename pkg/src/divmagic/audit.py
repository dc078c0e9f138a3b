"""Exhaustive sweeps confirming that every optimal interval is exact.

For a cell (d, N) every pair c in [0, m), m in [1, m_max] is run through a
vectorised brute-force scan and compared with what the interval admits.
Cells are independent, so sweeps fan out over processes and are merged
back in (d, N) order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from .bounds import Capability, DivisionSpec, Scheme, admits, admitted_range, optimal_interval
from .oracle import TightnessReport, check_tightness

__all__ = [
    "ROWS",
    "Row",
    "Violation",
    "CellResult",
    "default_numerator_bounds",
    "iff_cell",
    "tightness_cell",
    "run_sweep",
]


@dataclass(frozen=True)
class Row:
    """One line of the summary table: a scheme, a capability, and what it computes."""

    name: str
    scheme: Scheme
    capability: Capability
    divisibility: bool = False


ROWS = (
    Row("quotient", Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT),
    Row("quotient, multiply-add", Scheme.MULTIPLY_ADD_SHIFT, Capability.QUOTIENT),
    Row("quotient+remainder", Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT_AND_REMAINDER),
    Row("divisibility", Scheme.MULTIPLY_SHIFT, Capability.QUOTIENT_AND_REMAINDER, True),
    Row("quotient+remainder, multiply-add", Scheme.MULTIPLY_ADD_SHIFT, Capability.QUOTIENT_AND_REMAINDER),
    Row("divisibility, multiply-add", Scheme.MULTIPLY_ADD_SHIFT, Capability.QUOTIENT_AND_REMAINDER, True),
)


@dataclass(frozen=True, order=True)
class Violation:
    d: int
    N: int
    m: int
    c: int
    row: str
    detail: str


@dataclass
class CellResult:
    d: int
    N: int
    pairs: int = 0
    admitted: dict[str, int] = field(default_factory=dict)
    zero_edge: int = 0
    violations: list[Violation] = field(default_factory=list)


def default_numerator_bounds(d: int) -> list[int]:
    return sorted(n for n in {d, d + 1, 2 * d + 1, 3 * d - 1} if n >= d)


@lru_cache(maxsize=4)
def _pairs(m_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    ms = np.arange(1, m_max + 1, dtype=np.int64)
    M = np.repeat(ms, ms)
    offsets = np.concatenate(([0], np.cumsum(ms)[:-1]))
    C = np.arange(len(M), dtype=np.int64) - np.repeat(offsets, ms)
    return C, M, offsets


def _scan(C, M, d, N, add, remainder, divisibility=False, start=0):
    """Indices of pairs whose formula matches floor/mod for every n in [start, N]."""
    alive = np.arange(len(C))
    for n in range(start, N + 1):
        if not len(alive):
            break
        c = C[alive]
        m = M[alive]
        p = c * n + c if add else c * n
        if divisibility:
            ok = (p % m < c) == (n % d == 0)
        else:
            ok = p // m == n // d
            if remainder:
                ok &= (p % m) * d // m == n % d
        alive = alive[ok]
    return alive


def iff_cell(d: int, N: int, m_max: int = 512) -> CellResult:
    spec = DivisionSpec(d, N)
    C, M, offsets = _pairs(m_max)
    res = CellResult(d, N, pairs=len(C))
    for row in ROWS:
        iv = optimal_interval(spec, row.scheme, row.capability)
        add = row.scheme is Scheme.MULTIPLY_ADD_SHIFT
        expected = np.zeros(len(C), dtype=bool)
        for m in range(1, m_max + 1):
            cs = admitted_range(iv, m)
            lo, hi = max(cs.start, 0), min(cs.stop, m)
            # admitted_range is arithmetic; confirm its edges with the exact test.
            for c in (lo - 1, lo, hi - 1, hi):
                if 0 <= c < m and admits(iv, c, m) != (lo <= c < hi):
                    res.violations.append(Violation(d, N, m, c, row.name, "admitted_range disagrees with admits"))
            if lo < hi:
                expected[offsets[m - 1] + lo: offsets[m - 1] + hi] = True
        res.admitted[row.name] = int(expected.sum())
        if row.divisibility:
            # Sufficiency only: admitted pairs must give a correct test for n >= 1.
            idx = np.flatnonzero(expected)
            ok = _scan(C[idx], M[idx], d, N, add, False, divisibility=True, start=1)
            for i in sorted(set(range(len(idx))) - set(ok.tolist())):
                j = idx[i]
                res.violations.append(Violation(d, N, int(M[j]), int(C[j]), row.name, "divisibility test wrong"))
            p0 = C[idx] if add else 0 * C[idx]
            raw_zero_ok = (p0 % M[idx]) < C[idx]
            if add:
                res.zero_edge += int((~raw_zero_ok).sum())
                for j in idx[raw_zero_ok]:
                    res.violations.append(Violation(d, N, int(M[j]), int(C[j]), row.name, "n=0 edge did not occur"))
            else:
                for j in idx[~raw_zero_ok]:
                    res.violations.append(Violation(d, N, int(M[j]), int(C[j]), row.name, "divisibility wrong at n=0"))
            continue
        passed = np.zeros(len(C), dtype=bool)
        passed[_scan(C, M, d, N, add, row.capability is Capability.QUOTIENT_AND_REMAINDER)] = True
        for j in np.flatnonzero(passed != expected):
            what = "admitted but fails" if expected[j] else "rejected but passes"
            res.violations.append(Violation(d, N, int(M[j]), int(C[j]), row.name, what))
    res.violations.sort()
    return res


def tightness_cell(d: int, N: int) -> list[TightnessReport]:
    spec = DivisionSpec(d, N)
    seen = []
    for row in ROWS:
        if row.divisibility:
            continue
        seen.append(check_tightness(spec, row.scheme, row.capability))
    return seen


def _cells(ds: Iterable[int], n_rule: Callable[[int], Iterable[int]]) -> list[tuple[int, int]]:
    return sorted({(d, n) for d in ds for n in n_rule(d) if n >= d})


def run_sweep(fn, ds: Iterable[int], n_rule: Callable[[int], Iterable[int]] = default_numerator_bounds,
              jobs: int = 1, **kwargs) -> list:
    """Apply ``fn(d, N, **kwargs)`` to every cell; results come back in (d, N) order."""
    cells = _cells(ds, n_rule)
    if jobs <= 1:
        return [fn(d, n, **kwargs) for d, n in cells]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futures = [ex.submit(fn, d, n, **kwargs) for d, n in cells]
        return [f.result() for f in futures]

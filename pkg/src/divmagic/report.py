"""Machine-readable records: JSON with integers as decimal strings, and CSV."""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .bounds import BoundInterval, Capability, DivisionSpec, Scheme, Source
from .finder import MagicConstants
from .oracle import Counterexample, Kind, VerificationReport
from .rational import Ratio

__all__ = [
    "fraction_to_json",
    "fraction_from_json",
    "interval_to_json",
    "interval_from_json",
    "constants_to_json",
    "constants_from_json",
    "verification_to_json",
    "envelope",
    "dumps",
    "to_csv",
]


def fraction_to_json(r: Ratio) -> dict[str, str]:
    r = r.reduced()
    return {"num": str(r.num), "den": str(r.den)}


def fraction_from_json(obj: dict[str, str]) -> Ratio:
    return Ratio(int(obj["num"]), int(obj["den"]))


def interval_to_json(iv: BoundInterval) -> dict[str, Any]:
    return {
        "lower": fraction_to_json(iv.lower),
        "lower_inclusive": iv.lower_inclusive,
        "upper": fraction_to_json(iv.upper),
        "upper_inclusive": iv.upper_inclusive,
        "scheme": iv.scheme.value,
        "capability": iv.capability.value,
        "source": iv.source.value,
    }


def interval_from_json(obj: dict[str, Any]) -> BoundInterval:
    return BoundInterval(
        fraction_from_json(obj["lower"]),
        obj["lower_inclusive"],
        fraction_from_json(obj["upper"]),
        obj["upper_inclusive"],
        Scheme(obj["scheme"]),
        Capability(obj["capability"]),
        Source(obj["source"]),
    )


def spec_to_json(spec: DivisionSpec) -> dict[str, str]:
    return {"d": str(spec.d), "N": str(spec.N)}


def constants_to_json(mc: MagicConstants) -> dict[str, Any]:
    return {
        "c": str(mc.c),
        "m": str(mc.m),
        "shift": None if mc.shift is None else str(mc.shift),
        "scheme": mc.scheme.value,
        "capability": mc.capability.value,
        "spec": spec_to_json(mc.spec),
        "product_bits": str(mc.product_bits),
        "interval": interval_to_json(mc.interval),
    }


def constants_from_json(obj: dict[str, Any]) -> MagicConstants:
    shift = obj.get("shift")
    return MagicConstants(
        int(obj["c"]),
        int(obj["m"]),
        Scheme(obj["scheme"]),
        Capability(obj["capability"]),
        DivisionSpec(int(obj["spec"]["d"]), int(obj["spec"]["N"])),
        None if shift is None else int(shift),
    )


def counterexample_to_json(cx: Counterexample | None) -> dict[str, str] | None:
    if cx is None:
        return None
    return {"n": str(cx.n), "expected": str(cx.expected), "actual": str(cx.actual), "kind": cx.kind.value}


def counterexample_from_json(obj: dict[str, str] | None) -> Counterexample | None:
    if obj is None:
        return None
    return Counterexample(int(obj["n"]), int(obj["expected"]), int(obj["actual"]), Kind(obj["kind"]))


def verification_to_json(rep: VerificationReport) -> dict[str, Any]:
    return {
        "passed": rep.passed,
        "checked_count": str(rep.checked_count),
        "counterexample": counterexample_to_json(rep.counterexample),
        "notes": list(rep.notes),
    }


def verification_from_json(obj: dict[str, Any]) -> VerificationReport:
    return VerificationReport(
        obj["passed"],
        int(obj["checked_count"]),
        counterexample_from_json(obj["counterexample"]),
        tuple(obj["notes"]),
    )


def envelope(command: str, spec: DivisionSpec | None, results: list) -> dict[str, Any]:
    return {
        "command": command,
        "spec": None if spec is None else spec_to_json(spec),
        "results": results,
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def to_csv(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()

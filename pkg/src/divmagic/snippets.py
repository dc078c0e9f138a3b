"""Render constants as C expressions or pseudo-code, and run the pseudo-code."""

from __future__ import annotations

import ast
import enum
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .bounds import Capability, Scheme
from .errors import CapabilityError, DomainError
from .finder import MagicConstants

__all__ = ["Operation", "Dialect", "SnippetRequest", "render", "run_pseudocode", "row_name"]


class Operation(enum.Enum):
    QUOTIENT = "quotient"
    REMAINDER = "remainder"
    DIVISIBLE = "divisible"
    ROUND_NEAREST = "round-nearest"
    ROUND_HALF_EVEN = "round-half-even"


class Dialect(enum.Enum):
    C = "c"
    PSEUDO = "pseudo"


def row_name(scheme: Scheme, capability: Capability) -> str:
    base = "quotient" if capability is Capability.QUOTIENT else "quotient+remainder"
    return base + (", multiply-add" if scheme is Scheme.MULTIPLY_ADD_SHIFT else "")


def needs_remainder(op: Operation, d: int) -> bool:
    if op is Operation.ROUND_HALF_EVEN:
        return d % 2 == 0
    return op in (Operation.REMAINDER, Operation.DIVISIBLE)


def rounding_offset(op: Operation, d: int) -> int:
    return d // 2 if op in (Operation.ROUND_NEAREST, Operation.ROUND_HALF_EVEN) else 0


@dataclass(frozen=True)
class SnippetRequest:
    mc: MagicConstants
    operation: Operation
    dialect: Dialect

    def __post_init__(self) -> None:
        if needs_remainder(self.operation, self.mc.d) and (
            self.mc.capability is not Capability.QUOTIENT_AND_REMAINDER
        ):
            raise CapabilityError(
                f"{self.operation.value} needs remainder-capable constants"
            )

    @property
    def n_max(self) -> int:
        return self.mc.N - rounding_offset(self.operation, self.mc.d)


def _header(req: SnippetRequest) -> str:
    mc = req.mc
    return (
        f"{req.operation.value} of n by d={mc.d}, n in [0, {req.n_max}]: c={mc.c} m={mc.m}, "
        f"c/m in {mc.interval.describe(reduce=True)} ({row_name(mc.scheme, mc.capability)} bound), "
        f"{mc.product_bits}-bit products"
    )


def _c_suffix(mc: MagicConstants) -> str:
    width = max(mc.product_bits, (mc.m * mc.d).bit_length())
    if width <= 32:
        return "u"
    if width <= 64:
        return "ull"
    raise DomainError(f"{width}-bit intermediates do not fit a standard C integer type")


def _c_parts(mc: MagicConstants, x: str, u: str) -> tuple[str, str]:
    """C text for the product's quotient and remainder by m."""
    prod = f"{mc.c}{u} * {x}"
    if mc.scheme is Scheme.MULTIPLY_ADD_SHIFT:
        prod += f" + {mc.c}{u}"
    if mc.shift is not None:
        return f"(({prod}) >> {mc.shift})", f"(({prod}) & {mc.m - 1})"
    return f"(({prod}) / {mc.m}{u})", f"(({prod}) % {mc.m}{u})"


def _render_c(req: SnippetRequest) -> str:
    mc, op = req.mc, req.operation
    u = _c_suffix(mc)
    off = rounding_offset(op, mc.d)
    x = f"(n + {off}{u})" if off else "n"
    q, r = _c_parts(mc, x, u)
    if op in (Operation.QUOTIENT, Operation.ROUND_NEAREST) or (
        op is Operation.ROUND_HALF_EVEN and mc.d % 2
    ):
        body = q
    elif op is Operation.REMAINDER:
        scaled = f"{r} * {mc.d}{u}"
        body = f"(({scaled}) >> {mc.shift})" if mc.shift is not None else f"(({scaled}) / {mc.m}{u})"
    elif op is Operation.DIVISIBLE:
        body = f"({r} < {mc.c}{u})"
        if mc.scheme is Scheme.MULTIPLY_ADD_SHIFT:
            body = f"(n == 0 || {body})"
    else:
        body = f"({q} - (({r} < {mc.c}{u}) & ({q} & 1)))"
    return f"/* {_header(req)} */\n{body}\n"


def _render_pseudo(req: SnippetRequest) -> str:
    mc, op = req.mc, req.operation
    off = rounding_offset(op, mc.d)
    lines = [f"# {_header(req)}"]
    x = "n"
    if off:
        lines.append(f"z = n + {off}")
        x = "z"
    prod = f"{mc.c}*{x}" + (f" + {mc.c}" if mc.scheme is Scheme.MULTIPLY_ADD_SHIFT else "")
    q = f"floor(({prod})/{mc.m})"
    r = f"mod({prod}, {mc.m})"
    if op in (Operation.QUOTIENT, Operation.ROUND_NEAREST) or (
        op is Operation.ROUND_HALF_EVEN and mc.d % 2
    ):
        lines.append(q)
    elif op is Operation.REMAINDER:
        lines.append(f"floor({r}*{mc.d}/{mc.m})")
    elif op is Operation.DIVISIBLE:
        test = f"{r} < {mc.c}"
        lines.append(f"n == 0 or {test}" if mc.scheme is Scheme.MULTIPLY_ADD_SHIFT else test)
    else:
        lines.append(f"q = {q}")
        lines.append(f"q - 1 if {r} < {mc.c} and odd(q) else q")
    return "\n".join(lines) + "\n"


def render(req: SnippetRequest) -> str:
    if req.dialect is Dialect.C:
        return _render_c(req)
    return _render_pseudo(req)


_FUNCS = {
    "floor": lambda x: floor(x),
    "mod": lambda a, b: a % b,
    "odd": lambda x: x % 2 == 1,
}

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: Fraction(a) / Fraction(b),
}

_CMPS = {
    ast.Lt: lambda a, b: a < b,
    ast.LtE: lambda a, b: a <= b,
    ast.Gt: lambda a, b: a > b,
    ast.GtE: lambda a, b: a >= b,
    ast.Eq: lambda a, b: a == b,
    ast.NotEq: lambda a, b: a != b,
}


def _eval(node: ast.AST, env: dict):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name):
        return env[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.Compare) and len(node.ops) == 1 and type(node.ops[0]) in _CMPS:
        return _CMPS[type(node.ops[0])](_eval(node.left, env), _eval(node.comparators[0], env))
    if isinstance(node, ast.BoolOp):
        vals = (_eval(v, env) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    if isinstance(node, ast.IfExp):
        return _eval(node.body, env) if _eval(node.test, env) else _eval(node.orelse, env)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
        return _FUNCS[node.func.id](*(_eval(a, env) for a in node.args))
    raise ValueError(f"unsupported pseudo-code construct: {ast.dump(node)}")


def run_pseudocode(text: str, n: int):
    """Evaluate pseudo-code for numerator ``n`` with exact rational ``/``."""
    env = {"n": n}
    result = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        stmt = ast.parse(line).body[0]
        if isinstance(stmt, ast.Assign):
            env[stmt.targets[0].id] = _eval(stmt.value, env)
        elif isinstance(stmt, ast.Expr):
            result = _eval(stmt.value, env)
        else:
            raise ValueError(f"unsupported statement: {line}")
    return result

import re
import shutil
import subprocess
from pathlib import Path

import pytest

from divmagic.bounds import Capability, DivisionSpec, Scheme
from divmagic.errors import CapabilityError
from divmagic.evaluator import eval_quotient, eval_remainder, is_divisible
from divmagic.finder import MagicConstants, MMode, SearchConstraints, find_constants
from divmagic.snippets import Dialect, Operation, SnippetRequest, render, run_pseudocode

FIXTURES = Path(__file__).parent / "fixtures" / "snippets"
Q, QR = Capability.QUOTIENT, Capability.QUOTIENT_AND_REMAINDER
SHIFT, ADD = Scheme.MULTIPLY_SHIFT, Scheme.MULTIPLY_ADD_SHIFT


def _mc(c, m, d, N, scheme, cap):
    return MagicConstants(c, m, scheme, cap, DivisionSpec(d, N))


# (fixture name, constants, operation); each is rendered in both dialects
CASES = [
    ("q_171_512", _mc(171, 512, 3, 255, SHIFT, Q), Operation.QUOTIENT),
    ("div_7_32", _mc(7, 32, 5, 10, SHIFT, QR), Operation.DIVISIBLE),
    ("rem_7_32", _mc(7, 32, 5, 10, SHIFT, QR), Operation.REMAINDER),
    ("q_add_2_11", _mc(2, 11, 5, 12, ADD, Q), Operation.QUOTIENT),
    ("rem_add_2_11", _mc(2, 11, 5, 10, ADD, QR), Operation.REMAINDER),
    ("div_add_2_11", _mc(2, 11, 5, 10, ADD, QR), Operation.DIVISIBLE),
    ("round_nearest_d6", find_constants(DivisionSpec(6, 103), SHIFT, Q), Operation.ROUND_NEAREST),
    ("round_even_d6", find_constants(DivisionSpec(6, 103), SHIFT, QR), Operation.ROUND_HALF_EVEN),
    ("round_even_add_d10", find_constants(DivisionSpec(10, 1005), ADD, QR,
                                          SearchConstraints(MMode.ANY_INTEGER)), Operation.ROUND_HALF_EVEN),
    ("round_even_odd_d7", find_constants(DivisionSpec(7, 103), SHIFT, Q), Operation.ROUND_HALF_EVEN),
    ("q_add_7_32bit", find_constants(DivisionSpec.from_bits(7, 32), ADD, Q), Operation.QUOTIENT),
]

PARAMS = [(name, mc, op, dialect) for name, mc, op in CASES for dialect in Dialect]
IDS = [f"{name}.{dialect.value}" for name, _, _, dialect in PARAMS]


def expected(mc, op, n):
    if op is Operation.QUOTIENT:
        return eval_quotient(mc, n)
    if op is Operation.REMAINDER:
        return eval_remainder(mc, n)
    if op is Operation.DIVISIBLE:
        return is_divisible(mc, n)
    z = n + mc.d // 2
    q = eval_quotient(mc, z)
    if op is Operation.ROUND_HALF_EVEN and mc.d % 2 == 0 and q % 2 and is_divisible(mc, z):
        q -= 1
    return q


def _c_to_python(expr):
    expr = re.sub(r"(\d+)u(ll)?\b", r"\1", expr)
    return expr.replace("||", " or ").replace(" / ", " // ")


def _sample(req):
    top = req.n_max
    return range(top + 1) if top <= 5000 else [0, 1, 6, 7, 8, 13, 14, top - 7, top - 1, top]


@pytest.mark.parametrize("name, mc, op, dialect", PARAMS, ids=IDS)
def test_snippet_matches_golden(name, mc, op, dialect):
    text = render(SnippetRequest(mc, op, dialect))
    golden = FIXTURES / f"{name}.{dialect.value}.txt"
    assert golden.read_bytes() == text.encode()


@pytest.mark.parametrize("name, mc, op, dialect", PARAMS, ids=IDS)
def test_snippet_semantics(name, mc, op, dialect):
    req = SnippetRequest(mc, op, dialect)
    text = render(req)
    if dialect is Dialect.PSEUDO:
        run = lambda n: run_pseudocode(text, n)
    else:
        expr = _c_to_python(text.splitlines()[-1])
        run = lambda n: eval(expr, {"__builtins__": {}}, {"n": n})
    for n in _sample(req):
        assert int(run(n)) == int(expected(mc, op, n)), n


def test_reference_snippet_shapes():
    q = render(SnippetRequest(_mc(171, 512, 3, 255, SHIFT, Q), Operation.QUOTIENT, Dialect.C))
    assert q.splitlines()[-1] == "((171u * n) >> 9)"
    dv = render(SnippetRequest(_mc(7, 32, 5, 10, SHIFT, QR), Operation.DIVISIBLE, Dialect.C))
    assert dv.splitlines()[-1] == "(((7u * n) & 31) < 7u)"
    p = render(SnippetRequest(_mc(2, 11, 5, 12, ADD, Q), Operation.QUOTIENT, Dialect.PSEUDO))
    assert p.splitlines()[-1] == "floor((2*n + 2)/11)"
    assert "d=5" in p.splitlines()[0] and "[2/11, 1/5)" in p.splitlines()[0]


def test_incompatible_request():
    with pytest.raises(CapabilityError):
        SnippetRequest(_mc(171, 512, 3, 255, SHIFT, Q), Operation.REMAINDER, Dialect.C)
    with pytest.raises(CapabilityError):
        SnippetRequest(find_constants(DivisionSpec(6, 103), SHIFT, Q), Operation.ROUND_HALF_EVEN, Dialect.C)


def test_pseudocode_rejects_unknown_constructs():
    with pytest.raises(ValueError):
        run_pseudocode("__import__('os')", 1)
    with pytest.raises(ValueError):
        run_pseudocode("n ** 2", 1)


@pytest.mark.skipif(shutil.which("cc") is None, reason="no C compiler")
def test_c_snippets_compile_and_agree(tmp_path):
    cases = [(name, mc, op) for name, mc, op in CASES]
    body = []
    for i, (name, mc, op) in enumerate(cases):
        req = SnippetRequest(mc, op, Dialect.C)
        expr = render(req).splitlines()[-1]
        body.append(
            f"  for (unsigned long long n = 0; n <= {min(req.n_max, 5000)}ull; n++) "
            f"printf(\"%d %llu %llu\\n\", {i}, n, (unsigned long long)({expr}));"
        )
    src = "#include <stdio.h>\nint main(void) {\n" + "\n".join(body) + "\n  return 0;\n}\n"
    (tmp_path / "s.c").write_text(src)
    subprocess.run(["cc", "-O1", "-o", str(tmp_path / "s"), str(tmp_path / "s.c")], check=True)
    out = subprocess.run([str(tmp_path / "s")], check=True, capture_output=True, text=True).stdout
    for line in out.splitlines():
        i, n, got = map(int, line.split())
        _, mc, op = cases[i]
        assert got == int(expected(mc, op, n)), (cases[i][0], n)

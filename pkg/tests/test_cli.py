import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from catprob.cli.grammar import parse_workspace, tokenize
from catprob.cli.main import run_command, run_file
from catprob.cli.printer import (
    fmt_q,
    format_category,
    format_kernel,
    format_map,
    format_measure,
    format_space,
    format_workspace,
)
from catprob.errors import InvariantError, ParseError, ResolveError
from catprob.fincat import category_three, opposite_category
from catprob.finspace import product_space
from golden_cases import GOLDEN, load_cases, run_case
from strategies import kernels, maps, measures, spaces

WORKSPACE = (GOLDEN / "workspace.cat").read_text(encoding="utf-8")


@pytest.mark.parametrize("q, text", [(F(-1, 3), "-1/3"), (F(2), "2"), (F(0), "0"), (F(6, 4), "3/2")])
def test_rational_format(q, text):
    assert fmt_q(q) == text


def test_space_declaration():
    ws = parse_workspace("space X { points = a,b,c; atoms = {a} {b,c}; }")
    assert ws.spaces["X"].atoms == (("a",), ("b", "c"))


def test_measure_declaration():
    ws = parse_workspace("space X { points = a,b,c; atoms = {a} {b,c}; }\nmeasure P on X { {a}=1/3; {b,c}=2/3; }")
    assert ws.measures["P"].is_probability
    assert ws.measures["P"].weights == (F(1, 3), F(2, 3))


def test_row_not_normalized():
    with pytest.raises(InvariantError) as e:
        parse_workspace((GOLDEN / "bad_row.cat").read_text())
    assert e.value.code == "RowNotNormalized"


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_workspace("space X {\n  points = a b;\n}")
    assert (e.value.line, e.value.column) == (2, 14)


def test_comments_are_ignored():
    toks = tokenize("# nothing\nspace # trailing\n")
    assert [t.text for t in toks] == ["space", ""]


@pytest.mark.parametrize(
    "text, code",
    [
        ("space X { points = a; }\nspace X { points = b; }", "DuplicateName"),
        ("space X { points = a,b; }\nmeasure P on X { {a,b}=1; }", "UnknownAtom"),
        ("space X { points = a,b; }\nmeasure P on X { {a}=1; {a}=0; }", "DuplicateEntry"),
        ("space X { points = a; }\nmap f : X -> Y { a->a; }", "UnknownName"),
        ("space X { points = a,b; }\nkernel T : X ~> X { {a}: {a}=1; }", "MissingEntry"),
    ],
)
def test_resolve_errors(text, code):
    with pytest.raises(ResolveError) as e:
        parse_workspace(text)
    assert e.value.code == code


def test_missing_atoms_default_to_zero():
    ws = parse_workspace("space X { points = a,b; }\nmeasure P on X { {b}=1; }")
    assert ws.measures["P"].weights == (0, 1)


def test_zero_denominator():
    with pytest.raises(ParseError):
        parse_workspace("space X { points = a; }\nmeasure P on X { {a}=1/0; }")


def test_non_measurable_map_is_an_invariant_error():
    text = "space X { points = a,b; atoms = {a,b}; }\nspace Y { points = u,v; }\nmap f : X -> Y { a->u; b->v; }"
    with pytest.raises(InvariantError) as e:
        parse_workspace(text)
    assert e.value.code == "NonMeasurableMap"


# round trips


def test_workspace_round_trip():
    ws = parse_workspace(WORKSPACE)
    printed = format_workspace(ws)
    again = parse_workspace(printed)
    assert again.structurally_equal(ws)
    assert format_workspace(again) == printed


def test_product_space_round_trip():
    ws = parse_workspace(WORKSPACE)
    prod, p1, p2 = product_space(ws.spaces["X"], ws.spaces["Y"])
    text = "\n".join([format_space(ws.spaces["X"]), format_space(ws.spaces["Y"]), format_space(prod), format_map(p1)])
    back = parse_workspace(text)
    assert back.spaces["X_x_Y"] == prod
    assert back.maps["p1_X_x_Y"] == p1


def test_category_round_trip():
    c = opposite_category(category_three())
    assert parse_workspace(format_category(c)).categories[c.name] == c


@given(st.data())
def test_printed_objects_parse_back(data):
    x = data.draw(spaces(name="X", prefix="x"))
    y = data.draw(spaces(name="Y", prefix="y"))
    m = data.draw(measures(x, probability=data.draw(st.booleans())))
    f = data.draw(maps(x, y))
    k = data.draw(kernels(x, y))
    text = "\n".join([format_space(x), format_space(y), format_measure("m", m), format_map(f), format_kernel("k", k)])
    ws = parse_workspace(text)
    assert ws.spaces == {"X": x, "Y": y}
    assert ws.measures["m"] == m
    assert ws.maps["f"] == f
    assert ws.kernels["k"] == k


# commands


def test_bind_dirac_through_identity():
    ws = parse_workspace(WORKSPACE)
    out, code = run_command(ws, ["bind", "--measure", "Da", "--kernel", "I"])
    assert code == 0
    assert out == "measure bind_Da_I on X { {a}=1; {b,c}=0; }\n"


def test_laws_monad_lines():
    out, code = run_command(parse_workspace(WORKSPACE), ["laws", "monad"])
    assert code == 0
    assert [line.split()[:2] for line in out.splitlines()] == [
        ["left-unit", "PASS"],
        ["right-unit", "PASS"],
        ["assoc", "PASS"],
    ]


def test_unbounded_exit_code():
    out, code = run_command(parse_workspace(WORKSPACE), ["bounded", "--map", "f", "--dom", "P", "--cod", "RY"])
    assert code == 1 and "UNBOUNDED" in out


def test_seeded_laws_repeat_exactly():
    ws = parse_workspace(WORKSPACE)
    a = run_command(ws, ["laws", "stoch", "--seed", "1"])
    b = run_command(ws, ["laws", "stoch", "--seed", "1"])
    assert a == b


@pytest.mark.parametrize("name, workspace, code, argv", load_cases(), ids=[c[0] for c in load_cases()])
def test_golden(name, workspace, code, argv):
    out, got = run_case(workspace, argv)
    assert got == code
    assert out == (GOLDEN / f"{name}.out").read_text(encoding="utf-8")


def _cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "catprob", *args], capture_output=True, check=False, timeout=60
    )


def test_entry_point_is_deterministic():
    path = str(GOLDEN / "workspace.cat")
    first, second = _cli(path, "laws", "monad"), _cli(path, "laws", "monad")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.decode() == (GOLDEN / "laws_monad.out").read_text(encoding="utf-8")
    assert first.stderr == b""


def test_entry_point_exit_codes():
    assert _cli(str(GOLDEN / "bad_row.cat"), "check").returncode == 2
    assert _cli(str(GOLDEN / "workspace.cat"), "chi", "--left", "Vq", "--right", "V").returncode == 1
    missing = _cli(str(GOLDEN / "nope.cat"), "check")
    assert missing.returncode == 2 and missing.stdout.startswith(b"ERROR")


def test_file_level_errors_through_run_file():
    out, code = run_file("space X { points = a; ", ["check"])
    assert code == 2 and out.startswith("ERROR ParseError Syntax")

import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import FIXTURES
from sftcross.crossed import Monomial, S_star, adjoint, equals, func, S
from sftcross.cylfun import CylFun, quasi_basis, transfer
from sftcross.expr import ExprError, format_element, parse_ast, parse_expression
from sftcross.randgen import random_element
from sftcross.scalar import RadScalar
from sftcross.sysfile import SystemFileError, load_system, parse_system

SYSTEMS = {name: load_system(FIXTURES / f"{name}.json") for name in ("full2", "golden", "perm3", "red")}


def test_golden_file():
    sy = SYSTEMS["golden"]
    assert sy.matrix.entries == ((1, 1), (1, 0))
    assert sy.functions["h"]((1, 0)) == RadScalar.radical(1, 3)
    assert sy.weights(1, 0) == 2 * sy.weights(0, 0)


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"matrix": [[1, 0], [1, 0]]}, "zero column 1"),
        ({"matrix": [[1, 1], [0, 0]]}, "zero row 1"),
        ({"matrix": [[1, 1], [1, 0]], "weights": [["0", "0", "0.45"], ["1", "0", "0.45"], ["0", "1", "1"]]}, "not 1"),
        ({"matrix": [[1, 1], [1, 0]], "weights": [["1", "1", "1"]]}, "non-edge"),
        ({"matrix": [[1, 1], [1, 0]], "functions": {"f": {"depth": 1, "values": {"0": "1"}}}}, "missing values"),
        ({"matrix": [[1, 1], [1, 0]], "functions": {"f": {"depth": 2, "values": {"11": "1"}}}}, "not an admissible word"),
        ({"matrix": [[1, 1], [1, 0]], "functions": {"S": {"depth": 0, "values": {"": "1"}}}}, "identifiers other than"),
        ({"matrix": [[1, 1], [1, 0]], "functions": {"f": {"depth": 0, "values": {"": "sqrt(-1)"}}}}, "functions.f"),
        ({"matrix": [[1, 1], [1, 0]], "symbols": ["a"]}, "1 names for 2 symbols"),
        ({"matrix": [[1, 1], [1, 0]], "extra": 1}, "unknown keys"),
    ],
)
def test_system_diagnostics(doc, fragment):
    with pytest.raises(SystemFileError, match=fragment):
        parse_system(json.dumps(doc).encode())


def test_bad_json_location():
    with pytest.raises(SystemFileError, match="line 1"):
        parse_system(b"{")


def test_decimal_weights_are_exact():
    doc = {"matrix": [[1, 1], [1, 0]], "weights": [["0", "0", 0.25], ["1", "0", 0.75], ["0", "1", 1]]}
    sy = parse_system(json.dumps(doc))
    assert sy.weights(1, 0) * 4 == 3


def test_expression_examples():
    sy = SYSTEMS["full2"]
    x = parse_expression("u0 * S * S' * u0", sy)
    u0 = quasi_basis(sy.matrix).u[0]
    assert x.terms == (Monomial(u0, 1, 1, u0),)
    assert equals(parse_expression("S' * f * S", sy), func(transfer(sy.functions["f"])))
    assert equals(parse_expression("S^2'", sy), S_star(sy.matrix, 2))
    assert equals(parse_expression("(f*S)'", sy), adjoint(func(sy.functions["f"]) * S(sy.matrix)))
    assert equals(parse_expression("ind - Lam", sy), parse_expression("0", sy))
    assert equals(parse_expression("[0] + [1]", sy), parse_expression("[]", sy))
    assert equals(parse_expression("-1/2*sqrt(2)*i + 1", sy), parse_expression("1 - i*sqrt(2)*1/2", sy))


@pytest.mark.parametrize(
    "text, pos",
    [("S +", 3), ("foo", 0), ("S^x", 2), ("[2]", 1), ("u9", 0), ("sqrt(2", 6), ("1/0", 2), ("(S", 2), ("S ) ", 2), ("", 0)],
)
def test_expression_errors_report_position(text, pos):
    with pytest.raises(ExprError) as e:
        parse_expression(text, SYSTEMS["full2"])
    assert e.value.pos == pos


def test_left_associative():
    ast = parse_ast("a*b*c")
    assert ast.kind == "mul" and ast.args[0].kind == "mul"
    ast = parse_ast("a-b-c")
    assert ast.kind == "sub" and ast.args[0].kind == "sub"


@given(st.integers(0, 10**6), st.sampled_from(sorted(SYSTEMS)))
def test_print_parse_round_trip(seed, name):
    sy = SYSTEMS[name]
    x = random_element(random.Random(seed), sy.matrix, 3)
    assert equals(parse_expression(format_element(x, sy.symbols), sy), x)

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import close, scalar_to_complex
from sftcross.scalar import (
    DomainError,
    I,
    ONE,
    RadScalar,
    ScalarParseError,
    UnsupportedInverseError,
    ZERO,
    invert_monoradical,
    parse_scalar,
    sqrt_nonneg_rational,
    squarefree_decompose,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10])


@st.composite
def scalars(draw):
    x = ZERO
    for _ in range(draw(st.integers(0, 3))):
        d = draw(radicands)
        x = x + RadScalar.radical(draw(rationals), d) * (I if draw(st.booleans()) else ONE)
    return x


@given(scalars(), scalars(), scalars())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y * z) == (x * y) * z
    assert x * (y + z) == x * y + x * z
    assert x - x == ZERO
    assert (x * y).conj() == x.conj() * y.conj()


@given(scalars(), scalars())
def test_agrees_with_floats(x, y):
    fx, fy = scalar_to_complex(x), scalar_to_complex(y)
    assert close(scalar_to_complex(x * y), fx * fy)
    assert close(scalar_to_complex(x + y.conj()), fx + fy.conjugate())


@given(st.lists(st.tuples(st.integers(-6, 6), radicands), min_size=1, max_size=4))
def test_sign_matches_floats(terms):
    x = ZERO
    for c, d in terms:
        x = x + RadScalar.radical(c, d)
    v = scalar_to_complex(x).real
    if abs(v) > 1e-9:
        assert x.sign() == (1 if v > 0 else -1)
    elif not x:
        assert x.sign() == 0


def test_sign_of_near_cancellation():
    # sqrt 2 + sqrt 3 - sqrt 10 is about -0.0159
    x = RadScalar.radical(1, 2) + RadScalar.radical(1, 3) - RadScalar.radical(1, 10)
    assert x.sign() == -1


@pytest.mark.parametrize(
    "n, expected",
    [(1, (1, 1)), (8, (2, 2)), (12, (2, 3)), (72, (6, 2)), (30, (1, 30)), (49, (7, 1))],
)
def test_squarefree_decompose(n, expected):
    assert squarefree_decompose(n) == expected


def test_radical_products():
    assert RadScalar.radical(1, 2) * RadScalar.radical(1, 6) == RadScalar.radical(2, 3)
    assert RadScalar.radical(1, 8) == RadScalar.radical(2, 2)
    assert sqrt_nonneg_rational(Fraction(1, 2)) == RadScalar.radical(Fraction(1, 2), 2)
    assert I * I == -ONE


@given(st.fractions(min_value=0, max_value=100, max_denominator=30))
def test_sqrt_round_trip(q):
    r = sqrt_nonneg_rational(q)
    assert r * r == q
    assert r.sign() >= 0


def test_sqrt_negative():
    with pytest.raises(DomainError):
        sqrt_nonneg_rational(-1)


@given(rationals.filter(bool), rationals, radicands)
def test_invert_round_trip(a, b, d):
    x = RadScalar.radical(1, d) * RadScalar.gaussian(a, b)
    assert x * invert_monoradical(x) == ONE


def test_invert_unsupported():
    with pytest.raises(UnsupportedInverseError):
        invert_monoradical(ONE + RadScalar.radical(1, 2))
    with pytest.raises(UnsupportedInverseError):
        invert_monoradical(ZERO)
    assert invert_monoradical(ONE + I) == RadScalar.gaussian(Fraction(1, 2), Fraction(-1, 2))


@given(scalars())
def test_literal_round_trip(x):
    assert parse_scalar(x.to_literal()) == x


@pytest.mark.parametrize("text", ["", "1/", "sqrt(-2)", "2 +", "sqrt(2", "1/0", "x"])
def test_parse_errors(text):
    with pytest.raises((ScalarParseError, DomainError)):
        parse_scalar(text)


def test_parse_examples():
    assert parse_scalar("1/2*sqrt(2)") == sqrt_nonneg_rational(Fraction(1, 2))
    assert parse_scalar("3 - 2*i") == RadScalar.gaussian(3, -2)
    assert parse_scalar("sqrt(2)*i") == RadScalar.radical(1, 2) * I

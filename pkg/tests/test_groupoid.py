import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import F2, FIB, FULL3, P3, RING
from sftcross.crossed import S, S_star, adjoint, equals, func, scalar
from sftcross.cylfun import indicator, quasi_basis
from sftcross.groupoid import (
    GroupoidElement,
    UnsupportedMatrixError,
    adjoint as gadjoint,
    convolve,
    deaconu_v,
    normalize_equals,
    phi_iso,
    unit,
    verify_groupoid_relations,
)
from sftcross.randgen import random_element
from sftcross.scalar import RadScalar

seeds = st.integers(0, 10**6)
CONST = [F2, FULL3, P3, RING]
mats = st.sampled_from(CONST)


def s(A, *words_and_coeffs):
    return GroupoidElement(A, words_and_coeffs)


def test_unsupported():
    with pytest.raises(UnsupportedMatrixError):
        unit(FIB)
    with pytest.raises(UnsupportedMatrixError):
        phi_iso(S(FIB))


def test_convolution_examples():
    s0, s1 = s(F2, ((0,), (), 1)), s(F2, ((1,), (), 1))
    assert normalize_equals(convolve(gadjoint(s0), s0), unit(F2))
    assert not convolve(gadjoint(s0), s1).coeffs
    assert normalize_equals(s0 * gadjoint(s0) + s1 * gadjoint(s1), unit(F2))
    assert not normalize_equals(s0 * gadjoint(s0), unit(F2))


def test_admissibility_in_products():
    # on RING, 0 -> 2 is forbidden, so s_0 s_2 vanishes
    s0, s2 = s(RING, ((0,), (), 1)), s(RING, ((2,), (), 1))
    assert not convolve(s0, s2).coeffs
    assert convolve(s0, s(RING, ((1,), (), 1))).coeffs == {((0, 1), ()): 1}


def test_vv_star_value():
    v = deaconu_v(F2)
    half = RadScalar.rational(Fraction(1, 2))
    expected = s(F2, *[((c,), (d,), half) for c in (0, 1) for d in (0, 1)])
    assert normalize_equals(convolve(v, gadjoint(v)), expected)
    assert normalize_equals(convolve(gadjoint(v), v), unit(F2))


def test_phi_on_generators():
    u0 = quasi_basis(F2).u[0]
    img = phi_iso(func(u0) * S(F2))
    assert normalize_equals(img, s(F2, ((0,), (), 1)))
    assert normalize_equals(phi_iso(S_star(F2) * S(F2)), unit(F2))


@pytest.mark.parametrize("A", CONST)
def test_relations(A):
    rep = verify_groupoid_relations(A, cases=8)
    assert rep.ok, rep.render()


@given(seeds, mats)
def test_phi_is_star_homomorphism(seed, A):
    rng = random.Random(seed)
    x, y = random_element(rng, A, 2), random_element(rng, A, 2)
    assert normalize_equals(phi_iso(x * y), convolve(phi_iso(x), phi_iso(y)))
    assert normalize_equals(phi_iso(adjoint(x)), gadjoint(phi_iso(x)))


@given(seeds, mats)
def test_groupoid_equality_agrees(seed, A):
    rng = random.Random(seed)
    x, y = random_element(rng, A, 2), random_element(rng, A, 2)
    assert normalize_equals(phi_iso(x), phi_iso(y)) == equals(x, y)
    assert normalize_equals(phi_iso(x - x), phi_iso(scalar(A, 0)))


@given(seeds, mats)
def test_convolution_associative_and_adjoint(seed, A):
    rng = random.Random(seed)
    x, y, z = (phi_iso(random_element(rng, A, 1)) for _ in range(3))
    assert normalize_equals(convolve(convolve(x, y), z), convolve(x, convolve(y, z)))
    assert normalize_equals(gadjoint(convolve(x, y)), convolve(gadjoint(y), gadjoint(x)))


def test_raising_is_canonical():
    x = s(F2, ((0,), (1,), 3))
    raised = s(F2, ((0, 0), (1, 0), 3), ((0, 1), (1, 1), 3))
    assert normalize_equals(x, raised) and x == raised

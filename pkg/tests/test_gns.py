import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import F2, FIB, P3, RED
from sftcross.crossed import CrossedElement, S, S_star, adjoint, equals, func, raise_level, scalar
from sftcross.cylfun import constant, indicator, transfer
from sftcross.gns import (
    GnsVector,
    OracleUnavailable,
    act,
    act_untwisted,
    av_relation_checks,
    equality_oracle,
    matrix_element,
    xi,
)
from sftcross.measure import TransferWeights, solve_invariant, uniform_weights
from sftcross.randgen import random_cylfun, random_element

seeds = st.integers(0, 10**6)
FAITHFUL = [F2, FIB, P3]
mats = st.sampled_from(FAITHFUL)


def mu_of(A):
    return solve_invariant(uniform_weights(A))


def test_examples():
    mu = mu_of(F2)
    assert act(S(F2), xi(F2), mu) == GnsVector(F2, [(constant(F2, 1), 1)])
    v = GnsVector(F2, [(indicator(F2, (0,)), 0)])
    assert act(S_star(F2), v, mu) == GnsVector(F2, [(constant(F2, Fraction(1, 2)), -1)])
    u = GnsVector(F2, [(indicator(F2, (0,)), 1)])
    assert matrix_element(S(F2), u, xi(F2), mu) == Fraction(1, 2)
    assert matrix_element(scalar(F2, 1), xi(F2), xi(F2), mu) == 1


def test_oracle_examples():
    for A in FAITHFUL:
        mu = mu_of(A)
        assert equality_oracle(S_star(A) * S(A), scalar(A, 1), mu)
        assert equality_oracle(S(A) * S_star(A), scalar(A, 1), mu) == (A is P3)


def test_untwisted_collapses_range_projection():
    mu = mu_of(F2)
    one = constant(F2, 1)
    assert act_untwisted(S(F2) * S_star(F2), one, mu) == one
    assert not equals(S(F2) * S_star(F2), scalar(F2, 1))


def test_requires_full_support_and_uniform_weights():
    with pytest.raises(OracleUnavailable):
        act(S(RED), xi(RED), mu_of(RED))
    w = TransferWeights(FIB, {(0, 0): Fraction(1, 3), (1, 0): Fraction(2, 3), (0, 1): 1})
    with pytest.raises(OracleUnavailable):
        equality_oracle(S(FIB), S(FIB), solve_invariant(w))


def _vec(rng, A):
    return GnsVector(A, [(random_cylfun(rng, A, 3), rng.randint(-2, 2)) for _ in range(2)])


@given(seeds, mats)
def test_representation_property(seed, A):
    rng = random.Random(seed)
    mu = mu_of(A)
    x, y = random_element(rng, A, 1), random_element(rng, A, 1)
    v = _vec(rng, A)
    assert act(x * y, v, mu) == act(x, act(y, v, mu), mu)
    assert act(x + y, v, mu) == act(x, v, mu) + act(y, v, mu)


@given(seeds, mats)
def test_adjoint_property(seed, A):
    rng = random.Random(seed)
    mu = mu_of(A)
    x = random_element(rng, A, 2)
    u, v = _vec(rng, A), _vec(rng, A)
    assert matrix_element(adjoint(x), u, v, mu) == matrix_element(x, v, u, mu).conj()


@given(seeds, mats)
def test_grading_shift(seed, A):
    rng = random.Random(seed)
    mu = mu_of(A)
    x = random_element(rng, A, 1)
    (t,) = x.terms
    out = act(x, GnsVector(A, [(random_cylfun(rng, A, 2), 0)]), mu)
    assert set(out.parts) <= {t.n - t.m}


@given(seeds, mats)
def test_oracle_agrees_with_equals(seed, A):
    rng = random.Random(seed)
    mu = mu_of(A)
    x = random_element(rng, A, 2)
    y = CrossedElement(A, [t for m in x.terms for t in raise_level(m).terms])
    assert equality_oracle(x, y, mu)
    assert equality_oracle(x, x, mu)
    z = random_element(rng, A, 2)
    assert equality_oracle(x, z, mu) == equals(x, z)
    bump = y + func(indicator(A, A.words(2)[0])) * S(A) * S_star(A)
    assert not equality_oracle(x, bump, mu) and not equals(x, bump)


def test_av_relations_nonuniform():
    for t in (Fraction(1, 3), Fraction(3, 4)):
        w = TransferWeights(FIB, {(0, 0): t, (1, 0): 1 - t, (0, 1): 1})
        assert av_relation_checks(solve_invariant(w), depth=4, cases=15).ok


@pytest.mark.parametrize("A", FAITHFUL)
def test_av_relations(A):
    rep = av_relation_checks(mu_of(A), depth=4, cases=15)
    assert rep.ok, rep.render()


def test_av_example_value():
    # S* M_f S acts as multiplication by L(f) = 1/2 for f = 1_[0]
    mu = mu_of(F2)
    f = indicator(F2, (0,))
    g = random_cylfun(random.Random(0), F2, 3)
    v = GnsVector(F2, [(g, 0)])
    lhs = act(S_star(F2) * func(f) * S(F2), v, mu)
    assert lhs == GnsVector(F2, [(g * Fraction(1, 2), 0)])

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import F2, FIB, P3, RED
from oracles import close, point_word, pointwise_transfer, scalar_to_complex, uniform_weight
from sftcross.cylfun import (
    CylFun,
    MatrixMismatchError,
    PointwiseError,
    alpha,
    constant,
    expectation_En,
    indicator,
    quasi_basis,
    quasi_basis_check,
    transfer,
    transfer_unnormalized,
)
from sftcross.randgen import random_cylfun

MATS = [F2, FIB, P3, RED]
seeds = st.integers(0, 10**6)
mats = st.sampled_from(MATS)


def rand_f(seed, A, depth=3):
    return random_cylfun(random.Random(seed), A, depth)


def test_construction_checks():
    with pytest.raises(Exception):
        CylFun(FIB, 2, {(1, 1): 1})
    f = CylFun(FIB, 1, {(0,): 2})
    assert f((0, 1, 0)) == 2 and f((1, 0)) == 0


@given(seeds, mats)
def test_refine_coarsen_preserve_value(seed, A):
    f = rand_f(seed, A)
    g = f.refine(f.depth + 2)
    assert g == f and f.coarsen() == f
    assert hash(g) == hash(f)
    for w in A.words(f.depth + 2):
        assert g(w) == f(w)


@given(seeds, mats)
def test_alpha_is_composition_with_shift(seed, A):
    f = rand_f(seed, A)
    af = alpha(f, 2)
    for w in A.words(f.depth + 2):
        assert af(w) == f(w[2:])


@given(seeds, mats)
def test_transfer_matches_pointwise_sum(seed, A):
    f = rand_f(seed, A)
    Lf = transfer(f)
    rng = random.Random(seed)
    for _ in range(4):
        x = point_word(A, (rng.randrange(A.n_symbols),), max(f.depth, 2) + 2)
        assert close(scalar_to_complex(Lf(x)), pointwise_transfer(f, x, uniform_weight(A)))


@given(seeds, seeds, mats)
def test_transfer_axiom(s1, s2, A):
    f, g = rand_f(s1, A, 4), rand_f(s2, A, 3)
    assert transfer(f * alpha(g)) == transfer(f) * g
    assert transfer(alpha(g)) == g


def test_transfer_examples():
    assert transfer(indicator(F2, (0,))) == Fraction(1, 2)
    assert transfer(indicator(FIB, (1,))) == CylFun(FIB, 1, {(0,): Fraction(1, 2), (1,): 0})
    assert transfer_unnormalized(constant(FIB, 1)) == CylFun(FIB, 1, {(0,): 2, (1,): 1})


@given(seeds, seeds, seeds, mats, st.integers(1, 3))
def test_expectation_En(s1, s2, s3, A, n):
    f = rand_f(s1, A, 4)
    a, b = alpha(rand_f(s2, A, 2), n), alpha(rand_f(s3, A, 2), n)
    e = expectation_En(f, n)
    assert expectation_En(e, n) == e
    assert expectation_En(a * f * b, n) == a * e * b
    assert expectation_En(constant(A, 1), n) == 1


@given(seeds, mats)
def test_quasi_basis_reconstructs(seed, A):
    assert quasi_basis_check(rand_f(seed, A))


def test_quasi_basis_values():
    qb = quasi_basis(F2)
    s2 = CylFun(F2, 0, {(): 2}).sqrt()
    assert qb.u[0] == s2 * indicator(F2, (0,)) and qb.Lam == 2 and qb.I(2) == 4
    assert [u == 1 for u in quasi_basis(P3).u] == [True]
    fib = quasi_basis(FIB)
    # Lam counts the preimages of the point's image
    assert fib.Lam == CylFun(FIB, 2, {(0, 0): 2, (0, 1): 1, (1, 0): 2})
    assert fib.indE == fib.Lam
    for w in FIB.words(3):
        assert fib.I(2)(w) == FIB.column_sums[w[1]] * FIB.column_sums[w[2]]


def test_pointwise_errors():
    with pytest.raises(PointwiseError):
        indicator(F2, (0,)).inverse()
    with pytest.raises(MatrixMismatchError):
        constant(F2, 1) + constant(FIB, 1)

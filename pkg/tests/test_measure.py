from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import F2, FIB, P3, RED, RING
from oracles import cesaro_stationary, cylinder_mass_by_sum
from sftcross.measure import (
    TransferWeights,
    WeightsError,
    cylinder_mass,
    invariance_checks,
    nullspace,
    solve_invariant,
    uniform_weights,
)


def test_fixture_measures():
    assert solve_invariant(uniform_weights(FIB)).m == (Fraction(2, 3), Fraction(1, 3))
    assert solve_invariant(uniform_weights(F2)).m == (Fraction(1, 2),) * 2
    assert solve_invariant(uniform_weights(P3)).m == (Fraction(1, 3),) * 3
    red = solve_invariant(uniform_weights(RED))
    assert red.m == (1, 0) and not red.fully_supported


def test_weights_validation():
    with pytest.raises(WeightsError, match="not 1"):
        TransferWeights(FIB, {(0, 0): Fraction(45, 100), (1, 0): Fraction(45, 100), (0, 1): 1})
    with pytest.raises(WeightsError, match="non-edge"):
        TransferWeights(FIB, {(1, 1): 1})
    with pytest.raises(WeightsError):
        TransferWeights(FIB, {(0, 0): 1, (1, 0): 0, (0, 1): 1})


fracs = st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=20)


@given(fracs)
def test_golden_family_against_power_iteration(t):
    w = TransferWeights(FIB, {(0, 0): t, (1, 0): 1 - t, (0, 1): Fraction(1)})
    mu = solve_invariant(w)
    approx = cesaro_stationary(FIB, w)
    assert all(abs(float(a) - b) < 1e-6 for a, b in zip(mu.m, approx))
    assert invariance_checks(mu, depth=3, cases=5).ok


@given(fracs, fracs)
def test_ring_family(s, t):
    w = TransferWeights(RING, {(0, 0): s, (2, 0): 1 - s, (0, 1): t, (1, 1): 1 - t, (1, 2): Fraction(1, 2), (2, 2): Fraction(1, 2)})
    mu = solve_invariant(w)
    for k in range(4):
        for word in RING.words(k):
            assert abs(float(cylinder_mass(mu, word)) - cylinder_mass_by_sum(RING, w, [float(v) for v in mu.m], word)) < 1e-12


def test_nullspace():
    basis = nullspace([[1, 2, 3], [2, 4, 6]])
    assert len(basis) == 2
    for v in basis:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0
    assert nullspace([[1, 0], [0, 1]]) == []


@pytest.mark.parametrize("A", [F2, FIB, P3, RED])
def test_invariance_suite(A):
    assert invariance_checks(solve_invariant(uniform_weights(A)), depth=3, cases=10).ok

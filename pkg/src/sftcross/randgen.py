"""Seeded random generators for identity suites and tests."""
from __future__ import annotations

import random
from fractions import Fraction

from .cylfun import CylFun, constant
from .scalar import I, RadScalar
from .sft import TransitionMatrix

_SQRT2 = RadScalar.radical(1, 2)


def random_scalar(rng: random.Random, *, complex_ok=True, radical_ok=True) -> RadScalar:
    x = RadScalar.rational(Fraction(rng.randint(-3, 3), rng.choice((1, 1, 1, 2))))
    r = rng.random()
    if complex_ok and r < 0.25:
        x = x + I * rng.randint(-2, 2)
    elif radical_ok and r < 0.35:
        x = x + _SQRT2 * rng.randint(-1, 1)
    return x


def random_cylfun(
    rng: random.Random,
    A: TransitionMatrix,
    max_depth: int = 3,
    *,
    min_depth: int = 0,
    density: float = 0.6,
    complex_ok=True,
    radical_ok=True,
    nonzero=False,
) -> CylFun:
    while True:
        k = rng.randint(min_depth, max_depth)
        vals = {}
        for w in A.words(k):
            if rng.random() < density:
                vals[w] = random_scalar(rng, complex_ok=complex_ok, radical_ok=radical_ok)
        f = CylFun(A, k, vals, check=False)
        if f or not nonzero:
            return f


def random_positive_cylfun(rng: random.Random, A: TransitionMatrix, max_depth: int = 2) -> CylFun:
    k = rng.randint(0, max_depth)
    return CylFun(A, k, {w: Fraction(rng.randint(1, 4)) for w in A.words(k)})


def random_monomial(rng: random.Random, A: TransitionMatrix, max_depth: int = 2, max_power: int = 2, **kw):
    from .crossed import Monomial

    a = random_cylfun(rng, A, max_depth, nonzero=True, **kw)
    b = random_cylfun(rng, A, max_depth, nonzero=True, **kw)
    return Monomial(a, rng.randint(0, max_power), rng.randint(0, max_power), b)


def random_element(rng: random.Random, A: TransitionMatrix, n_terms: int = 2, max_depth: int = 2, max_power: int = 2, **kw):
    from .crossed import CrossedElement

    return CrossedElement(A, [random_monomial(rng, A, max_depth, max_power, **kw) for _ in range(n_terms)])


def unit(A: TransitionMatrix) -> CylFun:
    return constant(A, 1)

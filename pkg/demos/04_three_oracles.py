"""
Three ways to decide equality
=============================

The normal form, matrix elements of a faithful representation and the
groupoid picture must always agree.
"""
import random

from sftcross import TransitionMatrix, equals, raise_level, solve_invariant, uniform_weights
from sftcross.crossed import CrossedElement
from sftcross.gns import equality_oracle
from sftcross.groupoid import normalize_equals, phi_iso
from sftcross.randgen import random_element

F2 = TransitionMatrix([[1, 1], [1, 1]])
mu = solve_invariant(uniform_weights(F2))
rng = random.Random(0)

for k in range(6):
    x = random_element(rng, F2, 2)
    # a second presentation of the same element, one level up
    y = CrossedElement(F2, [t for m in x.terms for t in raise_level(m).terms])
    if k % 2:
        y = random_element(rng, F2, 2)
    print(
        f"pair {k}: normal form {equals(x, y)!s:5}  representation {equality_oracle(x, y, mu)!s:5}"
        f"  groupoid {normalize_equals(phi_iso(x), phi_iso(y))}"
    )

"""
Transfer operators and the quasi-basis
======================================

Cylinder functions are exact tables over admissible words.  The transfer
operator averages over the preimages of a point.
"""
from fractions import Fraction

from sftcross import TransitionMatrix, alpha, constant, indicator, quasi_basis, transfer
from sftcross.cylfun import CylFun, expectation_En, quasi_basis_check

A = TransitionMatrix([[1, 1], [1, 0]])
f = CylFun(A, 2, {(0, 0): 1, (0, 1): Fraction(1, 2), (1, 0): 3})
g = indicator(A, (1,))

# L(f alpha(g)) = L(f) g holds exactly
print(transfer(f * alpha(g)) == transfer(f) * g)

# E = alpha o L is a conditional expectation onto functions of x1, x2, ...
e = expectation_En(f, 1)
print("E(f) =", e, " idempotent:", expectation_En(e, 1) == e)

# the quasi-basis reconstructs every function from its expectations
qb = quasi_basis(A)
print("u =", qb.u)
print("Lambda =", qb.Lam, " ind(E) == Lambda:", qb.indE == qb.Lam)
print("f = sum u E(u* f):", quasi_basis_check(f))

# weighted fiber measures give other transfer operators
from sftcross.measure import TransferWeights, solve_invariant

w = TransferWeights(A, {(0, 0): Fraction(1, 3), (1, 0): Fraction(2, 3), (0, 1): 1})
print("L_w(1) =", transfer(constant(A, 1), w))
print("invariant masses:", solve_invariant(w).m)

"""
Computing in the crossed product
================================

Elements are sums of monomials a S^n S*^m b.  Equality is decided by an
exact normal form.
"""
from sftcross import S, S_star, TransitionMatrix, equals, expectation_G, func, normal_form, scalar
from sftcross.crossed import main_k0, toeplitz_redundancy_witness
from sftcross.cylfun import indicator
from sftcross.expr import format_element

F2 = TransitionMatrix([[1, 1], [1, 1]])
P3 = TransitionMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])

SS = S(F2) * S_star(F2)
print("S*S == 1:", equals(S_star(F2) * S(F2), scalar(F2, 1)))
print("SS* == 1 on the full 2-shift:", equals(SS, scalar(F2, 1)))
print("SS* == 1 for a permutation:", equals(S(P3) * S_star(P3), scalar(P3, 1)))

# the range projection of S at level 1
for (w, wp), c in sorted(normal_form(SS).components[0].coeffs.items()):
    print(" ", w, wp, c)

# the main redundancy: 1 = sum_c u_c S S* u_c*
k0 = main_k0(F2)
print("k0 =", format_element(k0))
print("k0 == 1:", equals(k0, scalar(F2, 1)))
print("(1 - k0) e_w S vanishes before the quotient:", toeplitz_redundancy_witness(indicator(F2, (0, 1))))

print("G(SS*) =", expectation_G(SS))

"""
Shift spaces and their dynamics
===============================

A 0/1 matrix fixes which symbol may follow which.  We look at the
golden-mean shift and a reducible example.
"""
from sftcross import TransitionMatrix, analyze
from sftcross.sft import EvPerPoint, shift_point, topfree_bruteforce

golden = TransitionMatrix([[1, 1], [1, 0]])
print("words of length 1..6:", [len(golden.words(k)) for k in range(1, 7)])

# every cycle of the golden-mean graph can be left, so the shift is
# topologically free
print(analyze(golden))

reducible = TransitionMatrix([[1, 1], [0, 1]])
rep = analyze(reducible)
print("exitless cycles:", rep.exitless_cycles)
print("predecessor-closed symbol sets:", [sorted(s) for s, _ in rep.predecessor_closed])

# the cylinder [1] holds a single point, which the shift fixes
print("brute-force witness for s x = x:", topfree_bruteforce(reducible, 1, 0, 4))

# eventually periodic points are stored as preperiod + primitive cycle
x = EvPerPoint((1,), (0, 1))
print(x, "->", shift_point(x), "->", shift_point(x, 2))

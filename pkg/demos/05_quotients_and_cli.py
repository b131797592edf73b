"""
Non-simplicity and the command line
===================================

A predecessor-closed symbol set gives an invariant closed sub-shift, and
restriction to it is a *-homomorphism with a nonzero kernel.
"""
import pathlib
import subprocess
import sys

from sftcross import S, S_star, TransitionMatrix, equals, func, indicator, restriction_hom, scalar

RED = TransitionMatrix([[1, 1], [0, 1]])
psi = lambda x: restriction_hom({0}, x)[0]
sub = psi(scalar(RED, 1)).matrix
print("psi(1_[1]) == 0:", equals(psi(func(indicator(RED, (1,)))), scalar(sub, 0)))
print("psi(S S*) == 1:", equals(psi(S(RED) * S_star(RED)), scalar(sub, 1)))

fixtures = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures"
for argv in (
    ["analyze", "red.json"],
    ["eval", "full2.json", "--expr", "S*S'", "--expr", "1", "--op", "equals"],
    ["quotient", "red.json", "--keep", "0"],
):
    argv = [a if not a.endswith(".json") else str(fixtures / a) for a in argv]
    res = subprocess.run([sys.executable, "-m", "sftcross", *argv], capture_output=True, text=True)
    print(f"$ sftcross {' '.join(argv[:1])} ...  (exit {res.returncode})")
    print(res.stdout)

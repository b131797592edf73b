"""Markov fiber weights, invariant measures and the state they integrate.

Fiber measures are given by edge weights ``w(b, c)`` (the mass of the
preimage ``bx`` in the fiber over ``x`` with ``x0 = c``).  The invariant
measure is then Markov with cylinder masses
``mu[w0..wk] = w(w0,w1) ... w(w(k-1),wk) * m[wk]``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .cylfun import CylFun, alpha, transfer
from .report import Report
from .scalar import ZERO, RadScalar, as_scalar
from .sft import TransitionMatrix, Word

__all__ = [
    "WeightsError",
    "TransferWeights",
    "InvariantMeasure",
    "uniform_weights",
    "solve_invariant",
    "nullspace",
    "state_phi",
    "inner",
    "cylinder_mass",
    "invariance_checks",
]


class WeightsError(ValueError):
    pass


@dataclass(frozen=True)
class TransferWeights:
    matrix: TransitionMatrix
    w: Mapping  # {(b, c): Fraction} over edges

    def __init__(self, matrix: TransitionMatrix, w: Mapping, *, check: bool = True):
        table = {}
        for (b, c), val in w.items():
            val = Fraction(val)
            if check and not matrix(b, c):
                raise WeightsError(f"weight on non-edge ({b},{c})")
            table[(b, c)] = val
        if check:
            for c in range(matrix.n_symbols):
                col = [table.get((b, c)) for b in matrix.predecessors[c]]
                if any(v is None or v <= 0 for v in col):
                    raise WeightsError(f"column {c}: every edge into {c} needs a positive weight")
                total = sum(col)
                if total != 1:
                    raise WeightsError(f"column {c}: weights sum to {total}, not 1 (fiber measures must be probabilities)")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "w", table)

    def __hash__(self):
        return hash((self.matrix, frozenset(self.w.items())))

    def __eq__(self, other):
        return isinstance(other, TransferWeights) and self.matrix == other.matrix and dict(self.w) == dict(other.w)

    def __call__(self, b: int, c: int) -> Fraction:
        return self.w.get((b, c), Fraction(0))


def uniform_weights(A: TransitionMatrix) -> TransferWeights:
    """Normalized counting measure on each fiber."""
    cs = A.column_sums
    return TransferWeights(A, {(b, c): Fraction(1, cs[c]) for c in range(A.n_symbols) for b in A.predecessors[c]})


def nullspace(rows: list) -> list:
    """Basis of the right kernel of a rational matrix, via reduced row echelon form.

    One basis vector per free column, in increasing column order.
    """
    M = [[Fraction(v) for v in r] for r in rows]
    if not M:
        return []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [v / pv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class InvariantMeasure:
    weights: TransferWeights
    m: tuple  # symbol masses, Fractions summing to 1

    @property
    def matrix(self) -> TransitionMatrix:
        return self.weights.matrix

    @property
    def fully_supported(self) -> bool:
        return all(v > 0 for v in self.m)

    def mass(self, w: Word) -> Fraction:
        return cylinder_mass(self, w)


def _closed_classes(A: TransitionMatrix) -> list:
    from .sft import _sccs

    out = []
    for comp in _sccs(A):
        s = set(comp)
        if all(b in s for c in comp for b in A.predecessors[c]):
            out.append(comp)
    return sorted(out)


def solve_invariant(weights: TransferWeights) -> InvariantMeasure:
    """Exact stationary masses ``m = W m``, ``sum(m) = 1`` with ``W[c][b] = w(c, b)``.

    The kernel of ``W - I`` is computed by rational Gaussian elimination.  If
    it is one-dimensional its basis vector (sign-definite) is normalized.
    Otherwise the masses of the first closed class (smallest symbols first)
    are returned, which is again a one-dimensional problem.
    """
    A = weights.matrix
    n = A.n_symbols
    W = [[weights(c, b) for b in range(n)] for c in range(n)]
    rows = [[W[c][b] - (1 if b == c else 0) for b in range(n)] for c in range(n)]
    basis = nullspace(rows)
    if len(basis) == 1:
        v = basis[0]
    else:
        cls = _closed_classes(A)[0]
        sub = [[rows[c][b] for b in cls] for c in cls]
        (vs,) = nullspace(sub)
        v = [Fraction(0)] * n
        for b, val in zip(cls, vs):
            v[b] = val
    total = sum(v)
    m = tuple(x / total for x in v)
    if any(x < 0 for x in m):
        raise ArithmeticError("stationary solution is not sign-definite")
    return InvariantMeasure(weights, m)


def cylinder_mass(mu: InvariantMeasure, w: Word) -> Fraction:
    if not w:
        return Fraction(1)
    wt = mu.weights
    p = mu.m[w[-1]]
    for a, b in zip(w, w[1:]):
        p *= wt(a, b)
    return p


def state_phi(mu: InvariantMeasure, f: CylFun) -> RadScalar:
    """Integral of ``f`` against the invariant measure."""
    if f.matrix != mu.matrix:
        raise ValueError("function and measure live on different shift spaces")
    total = ZERO
    for w, val in f.items():
        total = total + val * cylinder_mass(mu, w)
    return total


def inner(mu: InvariantMeasure, f: CylFun, g: CylFun) -> RadScalar:
    """``phi(g* f)``: linear in ``f``, conjugate-linear in ``g``."""
    return state_phi(mu, g.conj() * f)


def _disintegrated(mu: InvariantMeasure, f: CylFun) -> RadScalar:
    # sum over x-cylinders v of mu[v] * sum_b w(b, v0) f(bv), done by hand
    A = mu.matrix
    k = max(f.depth - 1, 1)
    total = ZERO
    for v in A.words(k):
        fiber = ZERO
        for b in A.predecessors[v[0]]:
            fiber = fiber + f((b,) + v) * mu.weights(b, v[0])
        total = total + fiber * cylinder_mass(mu, v)
    return total


def invariance_checks(mu: InvariantMeasure, depth: int = 3, cases: int = 20, seed: int = 0) -> Report:
    from .randgen import random_cylfun

    A = mu.matrix
    rep = Report("invariance")
    n = A.n_symbols
    stat = all(
        mu.m[c] == sum((mu.weights(c, b) * mu.m[b] for b in A.successors[c]), Fraction(0)) for c in range(n)
    )
    rep.add("stationarity", stat and sum(mu.m) == 1)
    add_ok = all(
        cylinder_mass(mu, w) == sum((cylinder_mass(mu, w + (b,)) for b in A.succ(w)), Fraction(0))
        for k in range(depth + 1)
        for w in A.words(k)
    )
    rep.add("cylinder additivity", add_ok)
    rng = random.Random(seed)
    fs = [random_cylfun(rng, A, depth) for _ in range(cases)]
    bad_alpha = sum(state_phi(mu, alpha(f)) != state_phi(mu, f) for f in fs)
    bad_L = sum(state_phi(mu, transfer(f, mu.weights)) != state_phi(mu, f) for f in fs)
    bad_dis = sum(_disintegrated(mu, f) != state_phi(mu, f) for f in fs)
    rep.add("phi o alpha = phi", bad_alpha == 0, f"{cases - bad_alpha}/{cases}")
    rep.add("phi o L = phi", bad_L == 0, f"{cases - bad_L}/{cases}")
    rep.add("disintegration along fibers", bad_dis == 0, f"{cases - bad_dis}/{cases}")
    return rep

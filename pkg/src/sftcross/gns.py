"""GNS-type representations on cylinder vectors.

Vectors of ``H (x) l2(Z)`` are finite sums ``sum f (x) delta_k`` with ``f`` a
cylinder function (the dense range of the GNS map).  The isometry acts as
``f -> alpha(f)``, its adjoint as the weighted transfer ``f -> L_w(f)``, and
the twisted representation tensors the isometry with the bilateral shift.

Inner products are exact, which makes matrix elements a faithful test of
equality: at levels ``(N, M, r)`` the elementary monomial
``e_w S^N S*^M e_w'`` sends ``e_v' (x) delta_0`` to
``[v' = w'] * w-weight(w') * e_w (x) delta_(N-M)``, so distinct tail-compatible
pairs land in distinct slots with positive weight.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .crossed import CrossedElement, Monomial, S, equals, func, levels, multiply
from .cylfun import CylFun, MatrixMismatchError, alpha, constant, indicator, transfer
from .measure import InvariantMeasure, state_phi, uniform_weights
from .report import Report
from .scalar import ZERO, RadScalar, as_scalar

__all__ = [
    "OracleUnavailable",
    "GnsVector",
    "xi",
    "act",
    "act_untwisted",
    "matrix_element",
    "equality_oracle",
    "av_relation_checks",
]


class OracleUnavailable(ValueError):
    pass


class GnsVector:
    """``sum f (x) delta_k``; terms with equal ``k`` are merged."""

    __slots__ = ("matrix", "parts")

    def __init__(self, matrix, terms: Iterable = ()):
        parts: dict = {}
        for f, k in terms:
            if f.matrix != matrix:
                raise MatrixMismatchError("vector component over a different shift space")
            parts[k] = parts[k] + f if k in parts else f
        self.matrix = matrix
        self.parts = {k: f for k, f in sorted(parts.items()) if f}

    @property
    def terms(self) -> list:
        return [(f, k) for k, f in self.parts.items()]

    def component(self, k: int) -> CylFun:
        return self.parts.get(k, constant(self.matrix, 0))

    def __add__(self, other: GnsVector) -> GnsVector:
        return GnsVector(self.matrix, self.terms + other.terms)

    def __sub__(self, other: GnsVector) -> GnsVector:
        return GnsVector(self.matrix, self.terms + [(-f, k) for f, k in other.terms])

    def __rmul__(self, c) -> GnsVector:
        c = as_scalar(c)
        return GnsVector(self.matrix, [(f * c, k) for f, k in self.terms])

    def __eq__(self, other):
        if not isinstance(other, GnsVector):
            return NotImplemented
        return (self - other).parts == {}

    __hash__ = None

    def __repr__(self):
        return " + ".join(f"{f!r}(x)d{k}" for f, k in self.terms) or "0"


def xi(A) -> GnsVector:
    """The cyclic vector ``1 (x) delta_0``."""
    return GnsVector(A, [(constant(A, 1), 0)])


def _require(mu: InvariantMeasure):
    if not mu.fully_supported:
        raise OracleUnavailable("measure is not fully supported; the GNS representation is not faithful")


def _act_mono(t: Monomial, f: CylFun, w) -> CylFun:
    return t.a * alpha(transfer(t.b * f, w, n=t.m), t.n)


def act(x: CrossedElement, v: GnsVector, mu: InvariantMeasure) -> GnsVector:
    """Twisted representation: ``a S^n S*^m b`` sends ``f (x) delta_k`` to
    ``a alpha^n(L_w^m(b f)) (x) delta_(k+n-m)``."""
    _require(mu)
    if x.matrix != mu.matrix or v.matrix != mu.matrix:
        raise MatrixMismatchError("element, vector and measure must share the shift space")
    w = mu.weights
    return GnsVector(mu.matrix, [(_act_mono(t, f, w), k + t.n - t.m) for t in x.terms for f, k in v.terms])


def act_untwisted(x: CrossedElement, f: CylFun, mu: InvariantMeasure) -> CylFun:
    """The representation on ``H`` alone (the shift index is dropped)."""
    _require(mu)
    w = mu.weights
    total = constant(mu.matrix, 0)
    for t in x.terms:
        total = total + _act_mono(t, f, w)
    return total


def vector_inner(u: GnsVector, v: GnsVector, mu: InvariantMeasure) -> RadScalar:
    """``<u, v> = sum_k phi(u_k* v_k)``, conjugate-linear in ``u``."""
    total = ZERO
    for k, f in u.parts.items():
        g = v.parts.get(k)
        if g is not None:
            total = total + state_phi(mu, f.conj() * g)
    return total


def matrix_element(x: CrossedElement, u: GnsVector, v: GnsVector, mu: InvariantMeasure) -> RadScalar:
    return vector_inner(u, act(x, v, mu), mu)


def equality_oracle(x: CrossedElement, y: CrossedElement, mu: InvariantMeasure, depth_override=None) -> bool:
    """Decide ``x == y`` from matrix elements of the twisted representation.

    The measure's fiber weights must be the uniform ones (the transfer
    operator built into the crossed product).  ``depth_override`` replaces the
    computed tail depth; a smaller value can only miss differences.
    """
    _require(mu)
    if mu.weights != uniform_weights(mu.matrix):
        raise OracleUnavailable("equality oracle needs the uniform fiber weights of the crossed product")
    A = mu.matrix
    diff = x - y
    for d, (N, M, r) in sorted(levels(diff).items()):
        if depth_override is not None:
            r = depth_override
        for vp in A.words(M + r):
            out = act(diff, GnsVector(A, [(indicator(A, vp), 0)]), mu).component(d)
            if not out:
                continue
            for v in A.words(N + r):
                if state_phi(mu, indicator(A, v) * out):
                    return False
    return True


def av_relation_checks(mu: InvariantMeasure, depth: int = 4, cases: int = 20, seed: int = 0) -> Report:
    """Relations between the isometry and multiplication operators on cylinder vectors."""
    from .randgen import random_cylfun

    _require(mu)
    A = mu.matrix
    w = mu.weights
    rng = random.Random(seed)
    rep = Report("AV relations")
    pairs = [(random_cylfun(rng, A, depth), random_cylfun(rng, A, depth)) for _ in range(cases)]

    def Sv(f):
        return alpha(f)

    def Sstar_v(f):
        return transfer(f, w)

    bad = sum(Sstar_v(f * Sv(g)) != transfer(f, w) * g for f, g in pairs)
    rep.add("S* M_f S = M_L(f)", bad == 0, f"{cases - bad}/{cases}")
    one = constant(A, 1)
    rep.add("S xi = xi", Sv(one) == one)
    bad = sum(state_phi(mu, Sv(f).conj() * Sv(g)) != state_phi(mu, f.conj() * g) for f, g in pairs)
    rep.add("S isometric", bad == 0, f"{cases - bad}/{cases}")
    bad = sum(
        state_phi(mu, Sstar_v(f).conj() * g) != state_phi(mu, f.conj() * Sv(g)) for f, g in pairs
    )
    rep.add("<S* f, g> = <f, S g>", bad == 0, f"{cases - bad}/{cases}")
    Sx = S(A)
    bad = 0
    for f, g in pairs:
        v = GnsVector(A, [(g, rng.randint(-2, 2))])
        lhs = act(Sx, act(func(f), v, mu), mu)
        rhs = act(func(alpha(f)), act(Sx, v, mu), mu)
        bad += lhs != rhs
    rep.add("pi~(S) pi~(a) = pi~(alpha(a)) pi~(S)", bad == 0, f"{cases - bad}/{cases}")
    return rep

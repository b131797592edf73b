"""Groupoid picture for constant column sums.

A monomial ``(mu, nu, c)`` stands for ``c`` times the characteristic function
of the compact open bisection

    Z(mu, nu) = {(x, |nu| - |mu|, y) : x in [mu], y in [nu], s^|mu| x = s^|nu| y}

of the Deaconu groupoid, i.e. ``c * s_mu s_nu*`` in Cuntz-Krieger notation.
``Z(mu, nu)`` is the disjoint union of ``Z(mu b, nu b)`` over symbols ``b``
that may follow both words, which is the raising rule used for equality.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .crossed import CrossedElement
from .cylfun import CylFun, alpha, quasi_basis, transfer
from .report import Report
from .scalar import ONE, RadScalar, as_scalar, sqrt_nonneg_rational
from .sft import TransitionMatrix, Word

__all__ = [
    "UnsupportedMatrixError",
    "CKMonomial",
    "GroupoidElement",
    "convolve",
    "adjoint",
    "normalize_equals",
    "phi_iso",
    "phi_function",
    "deaconu_v",
    "verify_groupoid_relations",
]


class UnsupportedMatrixError(ValueError):
    pass


def _require_p(A: TransitionMatrix) -> int:
    p = A.constant_p
    if p is None:
        raise UnsupportedMatrixError(f"column sums {A.column_sums} are not constant")
    return p


@dataclass(frozen=True)
class CKMonomial:
    mu: Word
    nu: Word
    coeff: RadScalar


def _common_succ(A: TransitionMatrix, *words) -> list:
    out = set(range(A.n_symbols))
    for w in words:
        out &= set(A.succ(w))
    return sorted(out)


class GroupoidElement:
    """Finite sum of bisection monomials, stored as ``{(mu, nu): coeff}``."""

    __slots__ = ("matrix", "coeffs")

    def __init__(self, matrix: TransitionMatrix, terms: Iterable = ()):
        _require_p(matrix)
        acc: dict = {}
        for t in terms:
            if isinstance(t, CKMonomial):
                mu, nu, c = t.mu, t.nu, t.coeff
            else:
                mu, nu, c = t
            mu, nu, c = tuple(mu), tuple(nu), as_scalar(c)
            if not (matrix.is_admissible(mu) and matrix.is_admissible(nu)):
                continue
            if not _common_succ(matrix, mu, nu):
                continue  # empty bisection
            acc[(mu, nu)] = acc[(mu, nu)] + c if (mu, nu) in acc else c
        self.matrix = matrix
        self.coeffs = {k: v for k, v in sorted(acc.items()) if v}

    @property
    def terms(self) -> list:
        return [CKMonomial(mu, nu, c) for (mu, nu), c in self.coeffs.items()]

    def __add__(self, other):
        return GroupoidElement(self.matrix, self.terms + other.terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> GroupoidElement:
        c = as_scalar(c)
        return GroupoidElement(self.matrix, [(mu, nu, v * c) for (mu, nu), v in self.coeffs.items()])

    def __mul__(self, other):
        if isinstance(other, GroupoidElement):
            return convolve(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def star(self) -> GroupoidElement:
        return adjoint(self)

    def __eq__(self, other):
        if not isinstance(other, GroupoidElement):
            return NotImplemented
        return normalize_equals(self, other)

    __hash__ = None

    def __repr__(self):
        def w(x):
            return "".join(map(str, x)) or "e"

        return " + ".join(f"({c})s[{w(mu)}]s[{w(nu)}]*" for (mu, nu), c in self.coeffs.items()) or "0"


def unit(A: TransitionMatrix) -> GroupoidElement:
    return GroupoidElement(A, [((), (), ONE)])


def _mono_conv(A, mu, nu, rho, tau):
    """Terms of ``s_mu s_nu* s_rho s_tau*``."""
    if len(rho) > len(nu) and rho[: len(nu)] == nu:
        e = rho[len(nu):]
        if A.is_admissible(mu + e):
            return [(mu + e, tau)]
        return []
    if len(nu) > len(rho) and nu[: len(rho)] == rho:
        e = nu[len(rho):]
        if A.is_admissible(tau + e):
            return [(mu, tau + e)]
        return []
    if nu == rho:
        # the middle point must continue past nu as well
        return [(mu + (b,), tau + (b,)) for b in _common_succ(A, mu, nu, tau)]
    return []


def convolve(x: GroupoidElement, y: GroupoidElement) -> GroupoidElement:
    A = x.matrix
    if y.matrix != A:
        raise ValueError("elements over different shift spaces")
    out = []
    for (mu, nu), c in x.coeffs.items():
        for (rho, tau), d in y.coeffs.items():
            cd = c * d
            out.extend((m, t, cd) for m, t in _mono_conv(A, mu, nu, rho, tau))
    return GroupoidElement(A, out)


def adjoint(x: GroupoidElement) -> GroupoidElement:
    return GroupoidElement(x.matrix, [(nu, mu, c.conj()) for (mu, nu), c in x.coeffs.items()])


def _raised(A, mu, nu, k) -> list:
    """Split ``Z(mu, nu)`` until ``|mu| == k``."""
    pairs = [(mu, nu)]
    while pairs and len(pairs[0][0]) < k:
        pairs = [(m + (b,), n + (b,)) for m, n in pairs for b in _common_succ(A, m, n)]
    return pairs


def _canonical(x: GroupoidElement) -> dict:
    A = x.matrix
    by_deg = defaultdict(list)
    for (mu, nu), c in x.coeffs.items():
        by_deg[len(nu) - len(mu)].append((mu, nu, c))
    out = {}
    for d, ts in by_deg.items():
        k = max(len(mu) for mu, _, _ in ts)
        k = max(k, -d)  # nu must not be shorter than zero
        acc: dict = {}
        for mu, nu, c in ts:
            for pair in _raised(A, mu, nu, k):
                acc[pair] = acc[pair] + c if pair in acc else c
        out[d] = (k, {p: v for p, v in acc.items() if v})
    return out


def normalize_equals(x: GroupoidElement, y: GroupoidElement) -> bool:
    """Equality of functions on the groupoid, by comparing at common word lengths."""
    diff = x - y
    return all(not coeffs for _, coeffs in _canonical(diff).values())


@lru_cache(maxsize=None)
def deaconu_v(A: TransitionMatrix) -> GroupoidElement:
    """``v = p^(-1/2) sum_c s_c``, supported on ``{(x, -1, s x)}``."""
    p = _require_p(A)
    k = sqrt_nonneg_rational(Fraction(1, p))
    return GroupoidElement(A, [((c,), (), k) for c in range(A.n_symbols)])


def phi_function(f: CylFun) -> GroupoidElement:
    """A cylinder function as a function on the unit space: ``sum_w f(w) s_w s_w*``."""
    return GroupoidElement(f.matrix, [(w, w, v) for w, v in f.items()])


@lru_cache(maxsize=None)
def _v_power(A: TransitionMatrix, n: int, star: bool) -> GroupoidElement:
    if n == 0:
        return unit(A)
    v = deaconu_v(A)
    if star:
        v = adjoint(v)
    return convolve(_v_power(A, n - 1, star), v)


def phi_iso(x: CrossedElement) -> GroupoidElement:
    """Image under the isomorphism fixing functions and sending ``S`` to ``v``."""
    A = x.matrix
    _require_p(A)
    out = GroupoidElement(A)
    for t in x.terms:
        img = convolve(
            convolve(convolve(phi_function(t.a), _v_power(A, t.n, False)), _v_power(A, t.m, True)),
            phi_function(t.b),
        )
        out = out + img
    return out


def verify_groupoid_relations(A: TransitionMatrix, cases: int = 10, seed: int = 0, depth: int = 3) -> Report:
    import random

    from .randgen import random_cylfun

    p = _require_p(A)
    rep = Report("groupoid relations")
    v = deaconu_v(A)
    vs = adjoint(v)
    one = unit(A)
    compat = [
        ((c,), (cp,), RadScalar.rational(Fraction(1, p)))
        for c in range(A.n_symbols)
        for cp in range(A.n_symbols)
        if _common_succ(A, (c,), (cp,))
    ]
    rep.add("v v* = (1/p) sum_{c,c'} s_c s_c'*", normalize_equals(convolve(v, vs), GroupoidElement(A, compat)))
    rep.add("v* v = 1", normalize_equals(convolve(vs, v), one))
    rng = random.Random(seed)
    fs = [random_cylfun(rng, A, depth) for _ in range(cases)]
    bad = sum(
        not normalize_equals(convolve(v, phi_function(f)), convolve(phi_function(alpha(f)), v)) for f in fs
    )
    rep.add("v f = alpha(f) v", bad == 0, f"{cases - bad}/{cases}")
    bad = sum(not normalize_equals(convolve(convolve(vs, phi_function(f)), v), phi_function(transfer(f))) for f in fs)
    rep.add("v* f v = L(f)", bad == 0, f"{cases - bad}/{cases}")
    total = GroupoidElement(A)
    for u in quasi_basis(A).u:
        fu = phi_function(u)
        total = total + convolve(convolve(fu, convolve(v, vs)), adjoint(fu))
    rep.add("sum u_c v v* u_c* = 1", normalize_equals(total, one))
    if p > 1:
        for c, u in enumerate(quasi_basis(A).u):
            s = convolve(phi_function(u), v)
            expect = GroupoidElement(A, [((b,), (b,), ONE) for b in A.successors[c]])
            rep.add(f"s_{c}* s_{c} = sum_b A({c},b) p_b", normalize_equals(convolve(adjoint(s), s), expect))
    return rep

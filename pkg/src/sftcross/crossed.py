"""The crossed product of C(X) by the shift endomorphism and its transfer operator.

Elements are formal sums of monomials ``a S^n S*^m b`` with cylinder
functions ``a, b``.  Products are computed with the Toeplitz relations

    S a = alpha(a) S,      S* a S = L(a),      a S*^q = S*^q alpha^q(a),

and equality in the quotient is decided by a canonical form: per gauge degree
``d = n - m`` every term is raised to a common level ``N`` with the relation
``1 = sum_c u_c S S* u_c*`` and expanded into elementary monomials
``e_w S^N S*^M e_w'`` with ``|w| = N + r``, ``|w'| = M + r``.  Such a monomial
vanishes unless ``w`` and ``w'`` share their last ``r`` symbols, and the
surviving ones are linearly independent (see :mod:`sftcross.gns`), so the
coefficient table is a complete invariant.

``L`` is always the uniform fiber average here.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .cylfun import (
    CylFun,
    MatrixMismatchError,
    alpha,
    constant,
    indicator,
    quasi_basis,
    transfer,
)
from .report import Report
from .scalar import ONE, RadScalar, as_scalar, sqrt_nonneg_rational
from .sft import EvPerPoint, InvalidWordError, TransitionMatrix, shift_point

__all__ = [
    "Monomial",
    "CrossedElement",
    "DegreeComponent",
    "NormalForm",
    "PreconditionError",
    "SearchFailure",
    "S",
    "S_star",
    "func",
    "scalar",
    "multiply",
    "adjoint",
    "raise_level",
    "levels",
    "normal_form",
    "equals",
    "expectation_F",
    "expectation_G",
    "expectation_G_vform",
    "verify_finite_index_identities",
    "main_k0",
    "toeplitz_redundancy_witness",
    "grande_h",
    "restriction_hom",
    "restrict_function",
]


class PreconditionError(ValueError):
    pass


class SearchFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class Monomial:
    a: CylFun
    n: int
    m: int
    b: CylFun

    @property
    def degree(self) -> int:
        return self.n - self.m

    def star(self) -> Monomial:
        return Monomial(self.b.conj(), self.m, self.n, self.a.conj())


def _collect(terms: Iterable[Monomial]) -> list:
    """Merge terms sharing ``(n, m, b)`` by adding their left coefficients."""
    groups: dict = {}
    order = []
    for t in terms:
        if not t.a or not t.b:
            continue
        key = (t.n, t.m, t.b)
        if key in groups:
            groups[key] = groups[key] + t.a
        else:
            groups[key] = t.a
            order.append(key)
    out = []
    for key in order:
        a = groups[key]
        if a:
            n, m, b = key
            out.append(Monomial(a, n, m, b))
    return out


class CrossedElement:
    """Formal sum of monomials; ``==`` is equality in the crossed product."""

    __slots__ = ("matrix", "terms")

    def __init__(self, matrix: TransitionMatrix, terms: Iterable[Monomial] = ()):
        terms = list(terms)
        for t in terms:
            if t.a.matrix != matrix or t.b.matrix != matrix:
                raise MatrixMismatchError("monomial over a different shift space")
        self.matrix = matrix
        self.terms = tuple(_collect(terms))

    def _coerce(self, other) -> CrossedElement:
        if isinstance(other, CrossedElement):
            if other.matrix != self.matrix:
                raise MatrixMismatchError("elements over different shift spaces")
            return other
        if isinstance(other, CylFun):
            return func(other)
        c = as_scalar(other)
        if c is None:
            raise TypeError(f"cannot combine CrossedElement with {type(other).__name__}")
        return scalar(self.matrix, c)

    def __add__(self, other):
        other = self._coerce(other)
        return CrossedElement(self.matrix, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return CrossedElement(self.matrix, [Monomial(-t.a, t.n, t.m, t.b) for t in self.terms])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return multiply(self, self._coerce(other))

    def __rmul__(self, other):
        return multiply(self._coerce(other), self)

    def __pow__(self, k: int):
        out = scalar(self.matrix, 1)
        for _ in range(k):
            out = out * self
        return out

    def star(self) -> CrossedElement:
        return adjoint(self)

    def degrees(self) -> set:
        return {t.degree for t in self.terms}

    def is_formally_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (CrossedElement, CylFun)) or as_scalar(other) is not None:
            return equals(self, self._coerce(other))
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        from .expr import format_element

        return f"CrossedElement({format_element(self)!r})"


def func(f: CylFun) -> CrossedElement:
    one = constant(f.matrix, 1)
    return CrossedElement(f.matrix, [Monomial(f, 0, 0, one)])


def scalar(A: TransitionMatrix, c) -> CrossedElement:
    return func(constant(A, c))


def S(A: TransitionMatrix, n: int = 1) -> CrossedElement:
    one = constant(A, 1)
    return CrossedElement(A, [Monomial(one, n, 0, one)])


def S_star(A: TransitionMatrix, m: int = 1) -> CrossedElement:
    one = constant(A, 1)
    return CrossedElement(A, [Monomial(one, 0, m, one)])


def _mono_product(x: Monomial, y: Monomial) -> Monomial:
    a, n, m, b = x.a, x.n, x.m, x.b
    c, p, q, d = y.a, y.n, y.m, y.b
    mid = b * c
    if m <= p:
        # S*^m (bc) S^m = L^m(bc), then S^n g = alpha^n(g) S^n
        return Monomial(a * alpha(transfer(mid, n=m), n), n + p - m, q, d)
    # S*^p (bc) S^p = L^p(bc), then h S*^q = S*^q alpha^q(h)
    return Monomial(a, n, m - p + q, alpha(transfer(mid, n=p), q) * d)


def multiply(x: CrossedElement, y: CrossedElement) -> CrossedElement:
    if x.matrix != y.matrix:
        raise MatrixMismatchError("elements over different shift spaces")
    return CrossedElement(x.matrix, [_mono_product(s, t) for s in x.terms for t in y.terms])


def adjoint(x: CrossedElement) -> CrossedElement:
    return CrossedElement(x.matrix, [t.star() for t in x.terms])


def raise_level(mono: Monomial, A: Optional[TransitionMatrix] = None) -> CrossedElement:
    """``a S^n S*^m b = sum_c a alpha^n(u_c) S^(n+1) S*^(m+1) alpha^m(u_c*) b``."""
    A = A or mono.a.matrix
    qb = quasi_basis(A)
    return CrossedElement(
        A,
        [Monomial(mono.a * alpha(u, mono.n), mono.n + 1, mono.m + 1, alpha(u.conj(), mono.m) * mono.b) for u in qb.u],
    )


def _raise_to(mono: Monomial, N: int) -> list:
    terms = [mono]
    A = mono.a.matrix
    for _ in range(N - mono.n):
        terms = _collect(t for s in terms for t in raise_level(s, A).terms)
    return terms


# -- canonical form ----------------------------------------------------------


@dataclass(frozen=True)
class DegreeComponent:
    """Coefficients of ``e_w S^N S*^M e_w'`` at tail depth ``r`` (minimal)."""

    N: int
    M: int
    r: int
    coeffs: Mapping  # {(w, w'): RadScalar}, nonzero only

    def __eq__(self, other):
        return (
            isinstance(other, DegreeComponent)
            and (self.N, self.M, self.r) == (other.N, other.M, other.r)
            and dict(self.coeffs) == dict(other.coeffs)
        )

    def __hash__(self):
        return hash((self.N, self.M, self.r, frozenset(self.coeffs.items())))


@dataclass(frozen=True)
class NormalForm:
    components: Mapping  # {degree: DegreeComponent}, empty components dropped

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return isinstance(other, NormalForm) and dict(self.components) == dict(other.components)

    def __hash__(self):
        return hash(frozenset(self.components.items()))


def levels(x: CrossedElement, at_level: Optional[Mapping] = None) -> dict:
    """Per degree: ``(N, M, r)`` with ``N`` the maximal (or requested) level and
    ``r`` large enough that every raised coefficient fits in depth ``N + r``."""
    by_deg: dict = defaultdict(list)
    for t in x.terms:
        by_deg[t.degree].append(t)
    out = {}
    for d, ts in by_deg.items():
        N = max(t.n for t in ts)
        if at_level and d in at_level:
            if at_level[d] < N:
                raise PreconditionError(f"requested level {at_level[d]} below term level {N} in degree {d}")
            N = at_level[d]
        M = N - d
        r = max([1] + [t.a.depth - N for t in ts] + [t.b.depth - M for t in ts])
        out[d] = (N, M, r)
    return out


def _coarsen_component(A: TransitionMatrix, N: int, M: int, r: int, coeffs: dict):
    while r > 1:
        coarse: dict = {}
        for (w, wp), c in coeffs.items():
            coarse.setdefault((w[:-1], wp[:-1]), {})[w[-1]] = c
        ok = True
        out = {}
        for (v, vp), by_b in coarse.items():
            succ = A.succ(v)
            if len(by_b) != len(succ):
                ok = False
                break
            vals = set(by_b.values())
            if len(vals) != 1:
                ok = False
                break
            out[(v, vp)] = vals.pop()
        if not ok:
            break
        coeffs, r = out, r - 1
    return r, coeffs


def normal_form(x: CrossedElement, at_level: Optional[Mapping] = None) -> NormalForm:
    A = x.matrix
    lv = levels(x, at_level)
    comps = {}
    for d, (N, M, r) in lv.items():
        coeffs: dict = defaultdict(lambda: None)
        raised = []
        for t in x.terms:
            if t.degree == d:
                raised.extend(_raise_to(t, N))
        raised = _collect(raised)
        for t in raised:
            a = t.a.refine(N + r)
            b = t.b.refine(M + r)
            by_tail: dict = defaultdict(list)
            for wp, bv in b.items():
                by_tail[wp[M:]].append((wp, bv))
            for w, av in a.items():
                for wp, bv in by_tail.get(w[N:], ()):
                    prev = coeffs[(w, wp)]
                    v = av * bv
                    coeffs[(w, wp)] = v if prev is None else prev + v
        clean = {k: v for k, v in coeffs.items() if v}
        if clean:
            rr, clean = _coarsen_component(A, N, M, r, clean)
            comps[d] = DegreeComponent(N, M, rr, clean)
    return NormalForm(comps)


def equals(x: CrossedElement, y: CrossedElement) -> bool:
    """Equality in the crossed product, at the larger of the two levels per degree."""
    if x.matrix != y.matrix:
        raise MatrixMismatchError("elements over different shift spaces")
    return normal_form(x - y).is_zero()


# -- expectations -------------------------------------------------------------


def expectation_F(x: CrossedElement) -> CrossedElement:
    """Gauge average: the degree-zero part."""
    return CrossedElement(x.matrix, [t for t in x.terms if t.n == t.m])


def expectation_G(x: CrossedElement, *, check_vform: bool = False) -> CylFun:
    """``G(a S^n S*^m b) = [n == m] a I_n^-1 b``.

    With ``check_vform`` the value is also computed as
    ``sum_i v_(i) F(x) v_(i)*`` with ``v_(i) = I_N^(-1/2) u_(i)`` and the two
    are required to agree in the crossed product.
    """
    A = x.matrix
    qb = quasi_basis(A)
    total = constant(A, 0)
    for t in x.terms:
        if t.n == t.m:
            total = total + t.a * qb.I(t.n).inverse() * t.b
    if check_vform:
        vf = expectation_G_vform(x)
        if not equals(vf, func(total)):
            raise ArithmeticError("G formula and its quasi-basis form disagree")
    return total


def _v_family(A: TransitionMatrix, N: int) -> list:
    qb = quasi_basis(A)
    scale = qb.I(N).inverse().sqrt()
    return [scale * u for u in qb.multi(N)]


def expectation_G_vform(x: CrossedElement) -> CrossedElement:
    """``sum_i v_(i) F(x) v_(i)*`` at the top level of ``F(x)``."""
    A = x.matrix
    fx = expectation_F(x)
    N = max((t.n for t in fx.terms), default=0)
    out = []
    for v in _v_family(A, N):
        vc = v.conj()
        out.extend(Monomial(v * t.a, t.n, t.m, t.b * vc) for t in fx.terms)
    return CrossedElement(A, out)


def v_partition_check(A: TransitionMatrix, N: int) -> bool:
    vs = _v_family(A, N)
    total = constant(A, 0)
    for v in vs:
        total = total + v * v.conj()
    return total == 1


# -- identity suites ---------------------------------------------------------


def ck_generators(A: TransitionMatrix) -> list:
    """``s_c = u_c S`` for each quasi-basis function."""
    qb = quasi_basis(A)
    return [func(u) * S(A) for u in qb.u]


def verify_finite_index_identities(A: TransitionMatrix, n_max: int = 2) -> Report:
    rep = Report("finite index identities")
    qb = quasi_basis(A)
    one = scalar(A, 1)
    Sx, Sstar = S(A), S_star(A)
    k0 = CrossedElement(A, [t for u in qb.u for t in (func(u) * Sx * Sstar * func(u.conj())).terms])
    rep.add("1 = sum_c u_c S S* u_c*", equals(one, k0))
    rep.add("ind(E) = Lam", qb.indE == qb.Lam)
    for n in range(1, n_max + 1):
        us = qb.multi(n)
        Sn = S(A, n) * S_star(A, n)
        tot = CrossedElement(A, [t for u in us for t in (func(u) * Sn * func(u.conj())).terms])
        rep.add(f"sum u_(i) S^{n} S*^{n} u_(i)* = 1", equals(tot, one))
        uu = constant(A, 0)
        for u in us:
            uu = uu + u * u.conj()
        rep.add(f"sum u_(i) u_(i)* = I_{n}", uu == qb.I(n))
    if A.constant_p == 1:
        rep.add("S unitary", equals(Sx * Sstar, one) and equals(Sstar * Sx, one))
    else:
        gens = ck_generators(A)
        for c, s in enumerate(gens):
            expect = constant(A, 0)
            for b in A.successors[c]:
                expect = expect + indicator(A, (b,))
            rep.add(f"s_{c}* s_{c} = sum_b A({c},b) 1_[b]", equals(s.star() * s, func(expect)))
        total = CrossedElement(A, [t for s in gens for t in (s * s.star()).terms])
        rep.add("sum_c s_c s_c* = 1", equals(total, one))
    return rep


def main_k0(A: TransitionMatrix) -> CrossedElement:
    """``k0 = sum_c u_c S S* u_c*`` as a formal sum (no normalization)."""
    qb = quasi_basis(A)
    return CrossedElement(A, [Monomial(u, 1, 1, u.conj()) for u in qb.u])


def toeplitz_redundancy_witness(b: CylFun) -> bool:
    """``(1 - k0) b S`` vanishes in raw monomial arithmetic, before any quotient.

    Every product term has the shape ``g S``, so the formal sum collapses to a
    single coefficient, which must be the zero function.
    """
    A = b.matrix
    x = multiply(scalar(A, 1) - main_k0(A), func(b) * S(A))
    return x.is_formally_zero()


# -- topological freeness witness --------------------------------------------


def _cylinder_meets_preimage(A: TransitionMatrix, w: tuple, n: int, m: int) -> bool:
    """Whether ``[w]`` meets ``s^-n(s^m([w]))``."""
    T = max(len(w) - min(n, m), 1)
    ys = {y[n:] for y in A.extensions(w, max(n + T - len(w), 0)) if len(y) >= n + T}
    zs = {z[m:] for z in A.extensions(w, max(m + T - len(w), 0)) if len(z) >= m + T}
    return bool(ys & zs)


def grande_h(A: TransitionMatrix, x0: EvPerPoint, n: int, m: int, max_depth: int = 8) -> CylFun:
    """Cylinder indicator ``h = 1_[w]`` with ``x0 in [w]`` and ``h S^n S*^m h = 0``."""
    x0.check(A)
    if n == m:
        raise PreconditionError("n and m must differ")
    if shift_point(x0, n) == shift_point(x0, m):
        raise PreconditionError(f"s^{n} x0 = s^{m} x0 for x0 = {x0}")
    for k in range(1, max_depth + 1):
        w = x0.prefix(k)
        if not _cylinder_meets_preimage(A, w, n, m):
            h = indicator(A, w)
            mono = CrossedElement(A, [Monomial(h, n, m, h)])
            if not normal_form(mono).is_zero():
                raise ArithmeticError(f"h S^{n} S*^{m} h is not zero for h = 1_{list(w)}")
            return h
    raise SearchFailure(f"no separating cylinder about {x0} up to depth {max_depth}")


# -- quotient by an invariant closed set ------------------------------------


def _check_keep(A: TransitionMatrix, keep: frozenset):
    if not keep or len(keep) == A.n_symbols:
        raise PreconditionError("the kept symbol set must be nonempty and proper")
    for c in keep:
        for b in A.predecessors[c]:
            if b not in keep:
                raise PreconditionError(f"not predecessor-closed: {b} -> {c} enters the set from outside")
    for a in keep:
        if not any(A(a, b) for b in keep):
            raise PreconditionError(f"restricted matrix has a zero row at symbol {a}")


def restrict_function(f: CylFun, sub: TransitionMatrix, index: dict) -> CylFun:
    out = {}
    for w, v in f.items():
        if all(s in index for s in w):
            out[tuple(index[s] for s in w)] = v
    return CylFun(sub, f.depth, out, check=False)


def restriction_hom(keep: Iterable[int], x: CrossedElement):
    """Restriction to the closed invariant sub-shift on ``keep``.

    Returns ``(psi_x, sub_matrix, index)``; ``index`` maps old symbols to new.
    """
    A = x.matrix
    keep = frozenset(keep)
    _check_keep(A, keep)
    sub, index = A.restrict(keep)
    terms = [
        Monomial(restrict_function(t.a, sub, index), t.n, t.m, restrict_function(t.b, sub, index))
        for t in x.terms
    ]
    return CrossedElement(sub, terms), sub, index

"""Cylinder functions on a subshift of finite type.

A :class:`CylFun` of depth ``k`` is a function of the first ``k`` coordinates,
stored sparsely as ``{word: RadScalar}`` over admissible ``k``-words (absent
words are zero).  These form the dense *-subalgebra of ``C(X)`` on which every
operator of the package acts exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional

from .scalar import ONE, ZERO, RadScalar, as_scalar, invert_monoradical, sqrt_nonneg_rational
from .sft import InvalidWordError, TransitionMatrix, Word

__all__ = [
    "CylFun",
    "MatrixMismatchError",
    "PointwiseError",
    "constant",
    "indicator",
    "alpha",
    "transfer",
    "transfer_unnormalized",
    "expectation_En",
    "QuasiBasis",
    "quasi_basis",
    "quasi_basis_check",
    "support",
]


class MatrixMismatchError(ValueError):
    pass


class PointwiseError(ValueError):
    pass


class CylFun:
    __slots__ = ("matrix", "depth", "_v", "_key")

    def __init__(self, matrix: TransitionMatrix, depth: int, values: Mapping | None = None, *, check=True):
        self.matrix = matrix
        self.depth = depth
        v = {}
        if values:
            for w, val in values.items():
                w = tuple(w)
                if check:
                    if len(w) != depth:
                        raise InvalidWordError(f"word {w} has length {len(w)}, expected {depth}")
                    matrix.check_word(w)
                    val = as_scalar(val)
                if val:
                    v[w] = val
        self._v = v
        self._key = None

    @classmethod
    def _raw(cls, matrix, depth, v):
        obj = cls.__new__(cls)
        obj.matrix = matrix
        obj.depth = depth
        obj._v = v
        obj._key = None
        return obj

    # -- access -----------------------------------------------------------
    def __call__(self, w: Word) -> RadScalar:
        """Value on any admissible word of length >= depth."""
        return self._v.get(tuple(w[: self.depth]), ZERO)

    def items(self):
        return self._v.items()

    def values_table(self) -> dict:
        return {w: self(w) for w in self.matrix.words(self.depth)}

    def is_zero(self) -> bool:
        return not self._v

    def __bool__(self):
        return bool(self._v)

    # -- depth bookkeeping --------------------------------------------------
    def refine(self, k: int) -> CylFun:
        if k == self.depth:
            return self
        if k < self.depth:
            raise ValueError("refine cannot lower depth; use coarsen")
        A = self.matrix
        out = {}
        extra = k - self.depth
        for w, val in self._v.items():
            for x in A.extensions(w, extra):
                out[x] = val
        return CylFun._raw(A, k, out)

    def coarsen(self) -> CylFun:
        """Equal function at the smallest possible depth."""
        f = self
        while f.depth > 0:
            g = _try_coarsen(f)
            if g is None:
                break
            f = g
        return f

    def _same(self, other):
        if not isinstance(other, CylFun):
            other = as_scalar(other)
            if other is None:
                raise TypeError(f"cannot combine CylFun with {type(other).__name__}")
            return self, constant(self.matrix, other)
        if other.matrix != self.matrix:
            raise MatrixMismatchError("functions live on different shift spaces")
        k = max(self.depth, other.depth)
        return self.refine(k), other.refine(k)

    # -- algebra ----------------------------------------------------------
    def __add__(self, other):
        f, g = self._same(other)
        out = dict(f._v)
        for w, val in g._v.items():
            s = out.get(w)
            s = val if s is None else s + val
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return CylFun._raw(f.matrix, f.depth, out)

    __radd__ = __add__

    def __neg__(self):
        return CylFun._raw(self.matrix, self.depth, {w: -v for w, v in self._v.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, CylFun) else -as_scalar(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CylFun):
            c = as_scalar(other)
            if c is None:
                return NotImplemented
            if not c:
                return CylFun._raw(self.matrix, self.depth, {})
            return CylFun._raw(self.matrix, self.depth, {w: v * c for w, v in self._v.items()})
        if other.matrix != self.matrix:
            raise MatrixMismatchError("functions live on different shift spaces")
        if other.depth > self.depth:
            self, other = other, self
        # self is the deeper one; look other up by prefix
        d = other.depth
        ov = other._v
        out = {}
        for w, val in self._v.items():
            o = ov.get(w[:d])
            if o is not None:
                p = val * o
                if p:
                    out[w] = p
        return CylFun._raw(self.matrix, self.depth, out)

    __rmul__ = __mul__

    def conj(self) -> CylFun:
        return CylFun._raw(self.matrix, self.depth, {w: v.conj() for w, v in self._v.items()})

    star = conj

    def map_values(self, fn: Callable[[RadScalar], RadScalar], *, total=False) -> CylFun:
        """Apply ``fn`` pointwise; ``total`` also feeds the zero values."""
        if total:
            src = self.values_table()
        else:
            src = self._v
        out = {}
        for w, v in src.items():
            r = fn(v)
            if r:
                out[w] = r
        return CylFun._raw(self.matrix, self.depth, out)

    def inverse(self) -> CylFun:
        if len(self._v) != len(self.matrix.words(self.depth)):
            raise PointwiseError("pointwise inverse of a function with zeros")
        return self.map_values(invert_monoradical)

    def sqrt(self) -> CylFun:
        def root(v):
            if not v.is_rational() or v.to_fraction() < 0:
                raise PointwiseError(f"pointwise square root of {v}")
            return sqrt_nonneg_rational(v.to_fraction())

        return self.map_values(root)

    # -- equality -----------------------------------------------------------
    def _canon(self):
        if self._key is None:
            c = self.coarsen()
            self._key = (self.matrix, c.depth, frozenset(c._v.items()))
        return self._key

    def __eq__(self, other):
        if isinstance(other, CylFun):
            if other.matrix != self.matrix:
                return False
            f, g = self._same(other)
            return f._v == g._v
        c = as_scalar(other)
        if c is None:
            return NotImplemented
        return self == constant(self.matrix, c)

    def __hash__(self):
        return hash(self._canon())

    def __repr__(self):
        body = ", ".join(f"{''.join(map(str, w)) or 'e'}: {v}" for w, v in sorted(self._v.items()))
        return f"CylFun(depth={self.depth}, {{{body}}})"


def _try_coarsen(f: CylFun) -> Optional[CylFun]:
    A = f.matrix
    k = f.depth
    out = {}
    for v in A.words(k - 1):
        vals = {f._v.get(v + (b,), ZERO) for b in A.succ(v)}
        if len(vals) != 1:
            return None
        val = vals.pop()
        if val:
            out[v] = val
    return CylFun._raw(A, k - 1, out)


def constant(A: TransitionMatrix, c=1) -> CylFun:
    c = as_scalar(c)
    return CylFun._raw(A, 0, {(): c} if c else {})


def indicator(A: TransitionMatrix, w: Iterable[int]) -> CylFun:
    """Indicator of the cylinder ``[w]``."""
    w = A.check_word(w)
    return CylFun._raw(A, len(w), {w: ONE})


def alpha(f: CylFun, n: int = 1) -> CylFun:
    """Composition with the shift, ``f o s^n``; depth grows by ``n``."""
    A = f.matrix
    for _ in range(n):
        out = {}
        for w, val in f._v.items():
            for b in (A.predecessors[w[0]] if w else range(A.n_symbols)):
                out[(b,) + w] = val
        f = CylFun._raw(A, f.depth + 1, out)
    return f


def _uniform_weight(A: TransitionMatrix) -> Callable[[int, int], Fraction]:
    return _uniform_weight_table(A).__getitem__


@lru_cache(maxsize=None)
def _uniform_weight_table(A: TransitionMatrix) -> dict:
    cs = A.column_sums
    return {(b, c): Fraction(1, cs[c]) for c in range(A.n_symbols) for b in A.predecessors[c]}


def _weight_fn(A, weights):
    if weights is None:
        table = _uniform_weight_table(A)
    else:
        if weights.matrix != A:
            raise MatrixMismatchError("weights belong to another shift space")
        table = weights.w
    return table


def _transfer_once(f: CylFun, table) -> CylFun:
    A = f.matrix
    if f.depth < 2:
        f = f.refine(2)
    out: dict = {}
    for w, val in f._v.items():
        tail = w[1:]
        term = val * table[(w[0], w[1])]
        s = out.get(tail)
        out[tail] = term if s is None else s + term
    return CylFun._raw(A, f.depth - 1, {w: v for w, v in out.items() if v})


def transfer(f: CylFun, weights=None, n: int = 1) -> CylFun:
    """Normalized transfer operator applied ``n`` times.

    Without weights this is the fiber average ``(1/#preimages) sum_b f(bx)``
    over admissible ``b``; with Markov edge weights ``w(b, c)`` it is
    ``sum_b w(b, x0) f(bx)``.  The output depth is ``max(1, depth - 1)``.
    """
    table = _weight_fn(f.matrix, weights)
    for _ in range(n):
        f = _transfer_once(f, table)
    return f


def transfer_unnormalized(f: CylFun) -> CylFun:
    """Preimage sum ``sum_{b: A(b,x0)=1} f(bx)`` without the normalization."""
    A = f.matrix
    table = {(b, c): 1 for c in range(A.n_symbols) for b in A.predecessors[c]}
    return _transfer_once(f, table)


def expectation_En(f: CylFun, n: int, weights=None) -> CylFun:
    """``alpha^n o L^n``: conditional expectation onto functions of ``s^n x``."""
    if n == 0:
        return f
    return alpha(transfer(f, weights, n), n)


def support(f: CylFun) -> set:
    """Words of ``f``'s depth where ``f`` is nonzero."""
    return set(f._v)


@dataclass(frozen=True)
class QuasiBasis:
    matrix: TransitionMatrix
    u: tuple
    Lam: CylFun

    @property
    def indE(self) -> CylFun:
        return _sum_sq(self.u)

    def I(self, n: int) -> CylFun:
        return _index_product(self, n)

    def multi(self, n: int) -> list:
        """All ``u_(i) = u_i0 alpha(u_i1) ... alpha^(n-1)(u_i(n-1))`` over multi-indices, lexicographic."""
        return list(_multi(self, n))


def _sum_sq(us):
    total = us[0] * us[0].conj()
    for u in us[1:]:
        total = total + u * u.conj()
    return total


@lru_cache(maxsize=None)
def _index_product(qb: QuasiBasis, n: int) -> CylFun:
    if n == 0:
        return constant(qb.matrix, 1)
    return _index_product(qb, n - 1) * alpha(qb.Lam, n - 1)


@lru_cache(maxsize=None)
def _multi(qb: QuasiBasis, n: int) -> tuple:
    if n == 0:
        return (constant(qb.matrix, 1),)
    shifted = [alpha(u, n - 1) for u in qb.u]
    return tuple(p * s for p in _multi(qb, n - 1) for s in shifted)


@lru_cache(maxsize=None)
def quasi_basis(A: TransitionMatrix) -> QuasiBasis:
    """Quasi-basis ``u_c = sqrt(Lam * 1_[c])`` and ``Lam = alpha(preimage count)``.

    The shift is injective on each depth-1 cylinder ``[c]``, so the depth-1
    indicators are a partition of unity subordinate to an injectivity cover.
    When every column sum is 1 the shift is injective outright and the
    quasi-basis collapses to ``{1}``.
    """
    Lam = alpha(transfer_unnormalized(constant(A, 1)))
    if A.constant_p == 1:
        return QuasiBasis(A, (constant(A, 1),), Lam)
    u = tuple((Lam * indicator(A, (c,))).sqrt() for c in range(A.n_symbols))
    return QuasiBasis(A, u, Lam)


def quasi_basis_check(f: CylFun, u: Optional[Iterable[CylFun]] = None) -> bool:
    """Exact test of ``f == sum_c u_c E(u_c* f)``."""
    if u is None:
        u = quasi_basis(f.matrix).u
    total = constant(f.matrix, 0)
    for uc in u:
        total = total + uc * expectation_En(uc.conj() * f, 1)
    return total == f

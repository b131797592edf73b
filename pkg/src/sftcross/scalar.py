"""Exact scalars in Q(i, sqrt(2), sqrt(3), ...).

A :class:`RadScalar` is a finite sum ``sum_d (x_d + i y_d) * sqrt(d)`` over
square-free positive integers ``d`` with rational ``x_d, y_d``.  The key
``d = 1`` holds the rational part.  This is closed under ring operations and
conjugation; inversion is only offered for single-radical values, which is
all the engine ever needs (index functions are positive integers and the
quasi-basis values are square roots of integers).

Rationals are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational as _RationalABC

__all__ = [
    "RadScalar",
    "ScalarError",
    "DomainError",
    "UnsupportedInverseError",
    "ScalarParseError",
    "ZERO",
    "ONE",
    "I",
    "as_scalar",
    "sqrt_nonneg_rational",
    "invert_monoradical",
    "parse_scalar",
    "squarefree_decompose",
]

_F0 = Fraction(0)


class ScalarError(ValueError):
    pass


class DomainError(ScalarError):
    pass


class UnsupportedInverseError(ScalarError):
    pass


class ScalarParseError(ScalarError):
    def __init__(self, msg: str, pos: int = 0):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


@lru_cache(maxsize=4096)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free."""
    if n <= 0:
        raise DomainError(f"expected a positive integer, got {n}")
    s, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return s, d * n


class RadScalar:
    """Immutable element of the field; compare with ``==``, hashable."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None):
        # terms: {d: (re, im)} with d square-free; zero coefficients dropped.
        t = {}
        if terms:
            for d, (re_, im) in terms.items():
                if re_ or im:
                    t[d] = (Fraction(re_), Fraction(im))
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> RadScalar:
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    # -- construction ---------------------------------------------------
    @classmethod
    def rational(cls, q) -> RadScalar:
        q = Fraction(q)
        return cls._raw({1: (q, _F0)} if q else {})

    @classmethod
    def gaussian(cls, re_, im) -> RadScalar:
        return cls({1: (re_, im)})

    @classmethod
    def radical(cls, coeff, n: int) -> RadScalar:
        """``coeff * sqrt(n)`` for a positive integer ``n``."""
        s, d = squarefree_decompose(n)
        c = Fraction(coeff) * s
        return cls._raw({d: (c, _F0)} if c else {})

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_rational(self) -> bool:
        t = self._t
        return not t or (len(t) == 1 and 1 in t and not t[1][1])

    def is_real(self) -> bool:
        return all(not im for _, im in self._t.values())

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError(f"{self} is not rational")
        return self._t[1][0] if self._t else _F0

    def real(self) -> RadScalar:
        return RadScalar._raw({d: (r, _F0) for d, (r, i) in self._t.items() if r})

    def imag(self) -> RadScalar:
        return RadScalar._raw({d: (i, _F0) for d, (r, i) in self._t.items() if i})

    def __complex__(self) -> complex:
        return sum(complex(float(r), float(i)) * d ** 0.5 for d, (r, i) in self._t.items()) + 0j

    def __float__(self) -> float:
        if not self.is_real():
            raise ScalarError("complex scalar has no float value")
        return complex(self).real

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for d, (r, i) in other._t.items():
            if d in t:
                r0, i0 = t[d]
                r, i = r0 + r, i0 + i
                if r or i:
                    t[d] = (r, i)
                else:
                    del t[d]
            else:
                t[d] = (r, i)
        return RadScalar._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return RadScalar._raw({d: (-r, -i) for d, (r, i) in self._t.items()})

    def __sub__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return ZERO
        if len(b) == 1 and 1 in b:
            c, e = b[1]
            if not e:
                return RadScalar._raw({d: (r * c, i * c) for d, (r, i) in a.items()})
        if len(a) == 1 and 1 in a:
            c, e = a[1]
            if not e:
                return RadScalar._raw({d: (r * c, i * c) for d, (r, i) in b.items()})
        t: dict = {}
        for d1, (r1, i1) in a.items():
            for d2, (r2, i2) in b.items():
                if d1 == d2:
                    g, d = d1, 1
                elif d1 == 1:
                    g, d = 1, d2
                elif d2 == 1:
                    g, d = 1, d1
                else:
                    g = gcd(d1, d2)
                    d = (d1 // g) * (d2 // g)
                re_ = (r1 * r2 - i1 * i2) * g
                im = (r1 * i2 + i1 * r2) * g
                if d in t:
                    r0, i0 = t[d]
                    t[d] = (r0 + re_, i0 + im)
                else:
                    t[d] = (re_, im)
        return RadScalar._raw({d: v for d, v in t.items() if v[0] or v[1]})

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        return self * invert_monoradical(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> RadScalar:
        """Complex conjugate; radicals are real and stay fixed."""
        return RadScalar._raw({d: (r, -i) for d, (r, i) in self._t.items()})

    def abs2(self) -> RadScalar:
        return self * self.conj()

    # -- order (real values only) ----------------------------------------
    def sign(self) -> int:
        """Exact sign of a real scalar, by interval refinement of the radicals."""
        if not self.is_real():
            raise ScalarError("sign of a non-real scalar")
        t = self._t
        if not t:
            return 0
        if len(t) == 1:
            (_, (r, _)), = t.items()
            return 1 if r > 0 else -1
        bits = 32
        while True:
            scale = 1 << bits
            lo = hi = Fraction(0)
            for d, (r, _) in t.items():
                root = isqrt(d * scale * scale)
                low = Fraction(root, scale)
                high = low if root * root == d * scale * scale else Fraction(root + 1, scale)
                if r > 0:
                    lo += r * low
                    hi += r * high
                else:
                    lo += r * high
                    hi += r * low
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def is_nonneg_real(self) -> bool:
        return self.is_real() and self.sign() >= 0

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            # rational values hash like the equal Fraction / int
            self._hash = hash(self.to_fraction()) if self.is_rational() else hash(frozenset(self._t.items()))
        return self._hash

    # -- printing ---------------------------------------------------------
    def __repr__(self):
        return f"RadScalar({str(self)!r})"

    def __str__(self):
        return self.to_literal()

    def to_literal(self) -> str:
        """Render in the scalar literal grammar (parseable by :func:`parse_scalar`)."""
        if not self._t:
            return "0"
        parts = []
        for d in sorted(self._t):
            r, i = self._t[d]
            for coeff, imag in ((r, False), (i, True)):
                if not coeff:
                    continue
                parts.append(_term_literal(coeff, d, imag))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _term_literal(coeff: Fraction, d: int, imag: bool) -> str:
    factors = []
    if d != 1:
        factors.append(f"sqrt({d})")
    if imag:
        factors.append("i")
    if not factors:
        return str(coeff)
    if coeff == 1:
        return "*".join(factors)
    if coeff == -1:
        return "-" + "*".join(factors)
    return "*".join([str(coeff)] + factors)


def as_scalar(x) -> RadScalar | None:
    if isinstance(x, RadScalar):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, _RationalABC):
        return RadScalar.rational(x)
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact scalars")
    return None


ZERO = RadScalar._raw({})
ONE = RadScalar._raw({1: (Fraction(1), _F0)})
I = RadScalar._raw({1: (_F0, Fraction(1))})


def sqrt_nonneg_rational(q) -> RadScalar:
    """Exact square root of a nonnegative rational.

    ``sqrt(p/q) = sqrt(p*q)/q``, then the square part of ``p*q`` is pulled out.

    >>> sqrt_nonneg_rational(Fraction(1, 2))
    RadScalar('1/2*sqrt(2)')
    """
    if isinstance(q, RadScalar):
        q = q.to_fraction()
    q = Fraction(q)
    if q < 0:
        raise DomainError(f"square root of negative rational {q}")
    if q == 0:
        return ZERO
    return RadScalar.radical(Fraction(1, q.denominator), q.numerator * q.denominator)


def invert_monoradical(x: RadScalar) -> RadScalar:
    """Inverse of a nonzero single-radical scalar ``c*sqrt(d)``: ``conj(c)/(|c|^2 d) * sqrt(d)``."""
    x = as_scalar(x)
    if x is None or not x._t:
        raise UnsupportedInverseError("cannot invert zero")
    if len(x._t) != 1:
        raise UnsupportedInverseError(f"inverse of multi-term scalar {x} is not supported")
    (d, (r, i)), = x._t.items()
    n2 = r * r + i * i
    k = n2 * d
    return RadScalar._raw({d: (r / k, -i / k)})


# -- literal parsing ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(i)\b|([-+*/()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScalarParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        toks.append((m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("", len(text)))
    return toks


def parse_scalar(text: str) -> RadScalar:
    """Parse a scalar literal such as ``"1/2*sqrt(2) - 3*i + 4"``.

    Grammar: ``scalar := term (('+'|'-') term)*``, where a term is a product of
    an optional rational ``int('/'posint)?`` with ``sqrt(posint)`` and ``i``
    factors.  Square-free reduction happens on parse.
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos][0]

    def take(expected=None):
        nonlocal pos
        tok, at = toks[pos]
        if expected is not None and tok != expected:
            raise ScalarParseError(f"expected {expected!r}, found {tok or 'end of input'!r}", at)
        pos += 1
        return tok

    def posint():
        tok, at = toks[pos]
        if not tok.isdigit():
            raise ScalarParseError(f"expected integer, found {tok or 'end of input'!r}", at)
        take()
        return int(tok)

    def factor():
        tok, at = toks[pos]
        if tok.isdigit():
            num = posint()
            if peek() == "/":
                take()
                den = posint()
                if den == 0:
                    raise ScalarParseError("zero denominator", toks[pos - 1][1])
                return RadScalar.rational(Fraction(num, den))
            return RadScalar.rational(num)
        if tok == "sqrt":
            take()
            take("(")
            n = posint()
            take(")")
            if n == 0:
                return ZERO
            return RadScalar.radical(1, n)
        if tok == "i":
            take()
            return I
        raise ScalarParseError(f"unexpected token {tok or 'end of input'!r}", at)

    def term():
        val = factor()
        while peek() == "*":
            take()
            val = val * factor()
        return val

    sign = 1
    if peek() in "+-" and peek():
        sign = -1 if take() == "-" else 1
    total = term() * sign
    while peek() in ("+", "-"):
        sign = -1 if take() == "-" else 1
        total = total + term() * sign
    if peek():
        raise ScalarParseError(f"trailing input {peek()!r}", toks[pos][1])
    return total

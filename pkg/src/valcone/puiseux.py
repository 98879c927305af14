"""Ordered field of fractions of Puiseux polynomials over Q.

Elements are ordered at ``t -> +infinity`` and carry the valuation
``val(p/q) = deg q - deg p`` (degrees taken in the rational exponents of t).
``t`` is a big element and ``log_t = -val``.

Internally an element is stored canonically as ``c * u**e * P(u) / Q(u)`` with
``u = t**(1/N)``, ``N`` the minimal ramification, ``c`` a nonzero rational and
``P``, ``Q`` coprime primitive integer polynomials with positive leading
coefficient and nonzero constant term.  Equal field values therefore have
identical internal tuples.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from math import gcd as _igcd

import mpmath

from . import kernels as K
from .errors import (
    DivisionByZero,
    Negative,
    NonPositive,
    NotBigElement,
    NotExactSquare,
    ParseError,
)

INF = math.inf


def _lcm(a, b):
    return a * b // _igcd(a, b)


class PuiseuxPoly:
    """Finite sum of rational-exponent monomials ``c * t**q`` with c in Q.

    ``terms`` maps exponent -> nonzero coefficient (both ``Fraction``);
    ``ramification`` is the lcm of the exponent denominators.
    """

    __slots__ = ("terms", "ramification")

    def __init__(self, terms=None):
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = Fraction(exp)
            coeff = Fraction(coeff)
            if coeff:
                clean[exp] = clean.get(exp, 0) + coeff
                if not clean[exp]:
                    del clean[exp]
        self.terms = dict(sorted(clean.items(), reverse=True))
        self.ramification = reduce(_lcm, (e.denominator for e in self.terms), 1)

    def __eq__(self, other):
        if isinstance(other, PuiseuxPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"PuiseuxPoly({_format_terms(self.terms)!r})"

    @property
    def degree(self):
        """Leading (largest) exponent; -inf for the zero polynomial."""
        return next(iter(self.terms)) if self.terms else -INF

    def leading_coefficient(self):
        return next(iter(self.terms.values())) if self.terms else Fraction(0)

    def to_json(self):
        return [{"c": _qstr(c), "e": _qstr(e)} for e, c in self.terms.items()]

    def _integer_form(self, N):
        """(shift, scale, P) with self = scale * u**shift * P(u), u = t**(1/N)."""
        if not self.terms:
            return 0, Fraction(0), []
        idx = {int(e * N): c for e, c in self.terms.items()}
        lo = min(idx)
        hi = max(idx)
        den = reduce(_lcm, (c.denominator for c in idx.values()), 1)
        P = [0] * (hi - lo + 1)
        for i, c in idx.items():
            P[i - lo] = int(c * den)
        return lo, Fraction(1, den), P


def _qstr(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_terms(terms):
    if not terms:
        return "0"
    out = []
    for exp, coeff in terms.items():
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if exp == 0:
            body = _qstr(mag)
        else:
            mono = "t" if exp == 1 else f"t^({_qstr(exp)})" if exp.denominator != 1 or exp < 0 else f"t^{exp}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}*{mono}"
            else:
                body = f"({_qstr(mag)})*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


class FieldElem:
    """Immutable element of the Puiseux fraction field."""

    __slots__ = ("_N", "_e", "_c", "_P", "_Q", "_hash")

    def __init__(self, value=0):
        if isinstance(value, FieldElem):
            src = value
        elif isinstance(value, str):
            src = parse(value)
        elif isinstance(value, (int, Fraction)):
            src = FieldElem._raw(1, 0, Fraction(value), (1,), (1,)) if value else _ZERO_RAW()
        elif isinstance(value, PuiseuxPoly):
            src = FieldElem.from_polys(value)
        else:
            raise TypeError(f"cannot build a field element from {type(value).__name__}")
        self._N, self._e, self._c, self._P, self._Q = src._N, src._e, src._c, src._P, src._Q
        self._hash = None

    # ----------------------------------------------------------------- build
    @classmethod
    def _raw(cls, N, e, c, P, Q):
        obj = object.__new__(cls)
        obj._N, obj._e, obj._c, obj._P, obj._Q = N, e, c, P, Q
        obj._hash = None
        return obj

    @classmethod
    def _canon(cls, N, e, c, P, Q, reduce_gcd=True):
        """Canonicalize ``c * u**e * P/Q`` (integer lists, lowest degree first)."""
        P = K.trim(list(P))
        Q = K.trim(list(Q))
        if not Q:
            raise DivisionByZero("zero denominator")
        if not P or c == 0:
            return _ZERO_RAW()
        k = 0
        while P[k] == 0:
            k += 1
        if k:
            P = P[k:]
            e += k
        k = 0
        while Q[k] == 0:
            k += 1
        if k:
            Q = Q[k:]
            e -= k
        cp = K.content(P)
        if P[-1] < 0:
            cp = -cp
        if cp != 1:
            P = [x // cp for x in P]
        cq = K.content(Q)
        if Q[-1] < 0:
            cq = -cq
        if cq != 1:
            Q = [x // cq for x in Q]
        c = Fraction(c) * cp / cq
        if reduce_gcd and len(P) > 1 and len(Q) > 1:
            g = K.gcd(P, Q)
            if len(g) > 1:
                P = K.divexact(P, g)
                Q = K.divexact(Q, g)
        # minimal ramification
        r = _igcd(N, e)
        if r > 1:
            for i in range(1, len(P)):
                if P[i]:
                    r = _igcd(r, i)
            for i in range(1, len(Q)):
                if Q[i]:
                    r = _igcd(r, i)
        if r > 1:
            P = P[::r]
            Q = Q[::r]
            e //= r
            N //= r
        return cls._raw(N, e, c, tuple(P), tuple(Q))

    @classmethod
    def from_polys(cls, num, den=None):
        """Build ``num/den`` from two ``PuiseuxPoly`` (den defaults to 1)."""
        if den is None:
            den = PuiseuxPoly({0: 1})
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return _ZERO_RAW()
        N = _lcm(num.ramification, den.ramification)
        en, sn, P = num._integer_form(N)
        ed, sd, Q = den._integer_form(N)
        return cls._canon(N, en - ed, sn / sd, P, Q)

    @classmethod
    def monomial(cls, coeff=1, exponent=0):
        """``coeff * t**exponent``."""
        coeff = Fraction(coeff)
        if not coeff:
            return _ZERO_RAW()
        exponent = Fraction(exponent)
        return cls._raw(exponent.denominator, exponent.numerator, coeff, (1,), (1,))

    # ------------------------------------------------------------ structure
    @property
    def ramification(self):
        return self._N

    @property
    def num(self):
        """Numerator as a ``PuiseuxPoly`` (denominator normalized monic)."""
        lq = self._Q[-1]
        N = self._N
        return PuiseuxPoly(
            {Fraction(self._e + i, N): self._c * p / lq for i, p in enumerate(self._P) if p}
        )

    @property
    def den(self):
        lq = self._Q[-1]
        N = self._N
        return PuiseuxPoly({Fraction(i, N): Fraction(q, lq) for i, q in enumerate(self._Q) if q})

    def is_zero(self):
        return self._c == 0

    def is_polynomial(self):
        return len(self._Q) == 1

    def is_rational(self):
        return self._c == 0 or (self._e == 0 and len(self._P) == 1 and len(self._Q) == 1)

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return self._c

    def term_count(self):
        return sum(1 for p in self._P if p) + sum(1 for q in self._Q if q)

    def _key(self):
        return (self._N, self._e, self._c, self._P, self._Q)

    def _lift(self, M):
        """(e, P, Q) expressed over u = t**(1/M); M must be a multiple of N."""
        r = M // self._N
        if r == 1:
            return self._e, list(self._P), list(self._Q)
        return self._e * r, K.spread(list(self._P), r), K.spread(list(self._Q), r)

    # ------------------------------------------------------------ arithmetic
    def _combine(self, other, sign):
        """Unreduced numerator of self + sign*other as (M, e0, scale, num, den)."""
        M = _lcm(self._N, other._N)
        ex, Px, Qx = self._lift(M)
        ey, Py, Qy = other._lift(M)
        cy = other._c if sign > 0 else -other._c
        L = _lcm(self._c.denominator, cy.denominator)
        nx = self._c.numerator * (L // self._c.denominator)
        ny = cy.numerator * (L // cy.denominator)
        e0 = min(ex, ey)
        if Qx == Qy:
            ax, ay, den = Px, Py, Qx
        else:
            ax, ay, den = K.mul(Px, Qy), K.mul(Py, Qx), K.mul(Qx, Qy)
        num = K.add(K.shift(K.scale(ax, nx), ex - e0), K.shift(K.scale(ay, ny), ey - e0))
        return M, e0, Fraction(1, L), num, den

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other._c == 0:
            return self
        if self._c == 0:
            return other
        M, e0, s, num, den = self._combine(other, 1)
        return FieldElem._canon(M, e0, s, num, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other._c == 0:
            return self
        if self._c == 0:
            return -other
        M, e0, s, num, den = self._combine(other, -1)
        return FieldElem._canon(M, e0, s, num, den)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        if self._c == 0:
            return self
        return FieldElem._raw(self._N, self._e, -self._c, self._P, self._Q)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self._c == 0 or other._c == 0:
            return _ZERO_RAW()
        M = _lcm(self._N, other._N)
        ex, Px, Qx = self._lift(M)
        ey, Py, Qy = other._lift(M)
        if len(Qy) > 1 and len(Px) > 1:
            g = K.gcd(Px, Qy)
            if len(g) > 1:
                Px, Qy = K.divexact(Px, g), K.divexact(Qy, g)
        if len(Qx) > 1 and len(Py) > 1:
            g = K.gcd(Py, Qx)
            if len(g) > 1:
                Py, Qx = K.divexact(Py, g), K.divexact(Qx, g)
        return FieldElem._canon(M, ex + ey, self._c * other._c, K.mul(Px, Py), K.mul(Qx, Qy), reduce_gcd=False)

    __rmul__ = __mul__

    def inverse(self):
        if self._c == 0:
            raise DivisionByZero("inverse of zero")
        return FieldElem._raw(self._N, -self._e, 1 / self._c, self._Q, self._P)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        if self._c == 0:
            return self
        # powers of coprime primitive polynomials stay coprime and primitive
        return FieldElem._canon(
            self._N, self._e * k, self._c**k, K.power(list(self._P), k), K.power(list(self._Q), k), reduce_gcd=False
        )

    # ------------------------------------------------------------- ordering
    def sign(self):
        return (self._c > 0) - (self._c < 0)

    def _cmp(self, other):
        if self._c == 0:
            return -other.sign()
        if other._c == 0:
            return self.sign()
        if self._key() == other._key():
            return 0
        _, _, _, num, _ = self._combine(other, -1)
        if not num:
            return 0
        return 1 if num[-1] > 0 else -1

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self._c)
            else:
                self._hash = hash(self._key())
        return self._hash

    def __lt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self._c < 0 else self

    def __bool__(self):
        return self._c != 0

    # ------------------------------------------------------------- display
    def __str__(self):
        if self._c == 0:
            return "0"
        num = _format_terms(self.num.terms)
        if self.is_polynomial():
            return num
        return f"({num})/({_format_terms(self.den.terms)})"

    def __repr__(self):
        return f"FieldElem({str(self)!r})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    # ---------------------------------------------------------- valuation
    def val(self):
        """Valuation ``deg den - deg num``; ``math.inf`` for zero."""
        if self._c == 0:
            return INF
        return Fraction(len(self._Q) - 1 - (len(self._P) - 1) - self._e, self._N)

    def log_t(self):
        """``log_t |x| = -val(x)`` (valuation-level logarithm in base t)."""
        v = self.val()
        if v == INF:
            raise NonPositive("log of zero")
        return -v

    def leading_term(self):
        """(coefficient, exponent) of the leading monomial at t -> infinity."""
        if self._c == 0:
            return Fraction(0), -INF
        return self._c * self._P[-1] / self._Q[-1], -self.val()

    def substitute_power(self, q):
        """Image under t -> t**q for a positive rational q."""
        q = Fraction(q)
        if q <= 0:
            raise ValueError("substitution exponent must be positive")
        if self._c == 0:
            return self
        p = q.numerator
        return FieldElem._canon(
            self._N * q.denominator,
            self._e * p,
            self._c,
            K.spread(list(self._P), p),
            K.spread(list(self._Q), p),
            reduce_gcd=False,
        )


def _ZERO_RAW():
    return FieldElem._raw(1, 0, Fraction(0), (), (1,))


ZERO = _ZERO_RAW()
ONE = FieldElem._raw(1, 0, Fraction(1), (1,), (1,))
T = FieldElem.monomial(1, 1)


def _coerce(x):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Fraction)):
        if not x:
            return ZERO
        return FieldElem._raw(1, 0, Fraction(x), (1,), (1,))
    return None


def field(x):
    """Coerce ints, Fractions, strings, JSON dicts and PuiseuxPolys."""
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, dict):
        return from_json(x)
    if isinstance(x, float):
        return FieldElem(Fraction(x))
    return FieldElem(x)


# ----------------------------------------------------------------- ordering


def compare(x, y):
    """-1, 0, 1 for x < y, x == y, x > y in the order at t -> +inf."""
    return field(x)._cmp(field(y))


def val(x):
    return field(x).val()


def _power_sign(x, k, y, j):
    """Sign of x**k - y**j for positive x, y and integers k, j.

    Only the top coefficients of the cross-multiplied numerators are formed,
    widening the window until the sign is decided or the products are exact.
    """
    if k < 0:
        x, k = x.inverse(), -k
    if j < 0:
        y, j = y.inverse(), -j
    M = _lcm(x._N, y._N)
    ex, Px, Qx = x._lift(M)
    ey, Py, Qy = y._lift(M)
    cX = x._c**k
    cY = y._c**j
    # x**k - y**j has numerator cX u^(k ex) Px^k Qy^j - cY u^(j ey) Py^j Qx^k
    dX = k * ex + k * (len(Px) - 1) + j * (len(Qy) - 1)
    dY = j * ey + j * (len(Py) - 1) + k * (len(Qx) - 1)
    if dX != dY:
        return 1 if dX > dY else -1
    lenX = k * (len(Px) - 1) + j * (len(Qy) - 1) + 1
    lenY = j * (len(Py) - 1) + k * (len(Qx) - 1) + 1
    full = max(lenX, lenY)
    w = 4
    while True:
        wX = K.mul_top_hf(K.pow_top(Px, k, w), K.pow_top(Qy, j, w), w)
        wY = K.mul_top_hf(K.pow_top(Py, j, w), K.pow_top(Qx, k, w), w)
        for i in range(min(w, full)):
            a = cX * (wX[i] if i < len(wX) else 0)
            b = cY * (wY[i] if i < len(wY) else 0)
            if a != b:
                return 1 if a > b else -1
        if w >= full:
            return 0
        w *= 2


def log_big(a, b, tol=Fraction(1, 64)):
    """Interval ``(lo, hi)`` of width <= tol containing ``log_b(a)``.

    Uses only the Dedekind cut comparisons ``b**m <= a**n``.
    """
    a = field(a)
    b = field(b)
    if a.sign() <= 0:
        raise NonPositive(f"log of non-positive element {a}")
    if b.sign() <= 0 or b.val() >= 0:
        raise NotBigElement(f"{b} is not a big element")
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = math.ceil(1 / tol)

    def below(m):  # b**m <= a**n
        return _power_sign(b, m, a, n) <= 0

    if below(0):
        lo, hi = 0, 1
        while below(hi):
            lo, hi = hi, hi * 2
    else:
        lo, hi = -1, 0
        while not below(lo):
            lo, hi = lo * 2, lo
    # invariant: b**lo <= a**n < b**hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if below(mid):
            lo = mid
        else:
            hi = mid
    if _power_sign(b, lo, a, n) == 0:
        return Fraction(lo, n), Fraction(lo, n)
    return Fraction(lo, n), Fraction(hi, n)


# -------------------------------------------------------------------- roots


def _isqrt_poly(P):
    """R with R*R == P for a primitive integer polynomial, else None."""
    d = len(P) - 1
    if d % 2:
        return None
    lc = P[-1]
    r0 = math.isqrt(lc)
    if r0 * r0 != lc:
        return None
    Phf = P[::-1]
    R = [r0]
    for i in range(1, d // 2 + 1):
        s = Phf[i] - sum(R[j] * R[i - j] for j in range(1, i))
        q, rem = divmod(s, 2 * r0)
        if rem:
            return None
        R.append(q)
    R = R[::-1]
    if K.mul(R, R) != list(P):
        return None
    return R


def _qsqrt(q):
    n = math.isqrt(q.numerator)
    d = math.isqrt(q.denominator)
    if n * n != q.numerator or d * d != q.denominator:
        return None
    return Fraction(n, d)


def sqrt_exact(x):
    """Nonnegative y with y*y == x when x is a square in the field."""
    x = field(x)
    if x._c < 0:
        raise Negative(f"square root of negative element {x}")
    if x._c == 0:
        return x
    c = _qsqrt(x._c)
    if c is None:
        raise NotExactSquare(f"{x} is not a square (coefficient)")
    N, e, P, Q = x._N, x._e, list(x._P), list(x._Q)
    if e % 2:
        N, e, P, Q = 2 * N, 2 * e, K.spread(P, 2), K.spread(Q, 2)
    rP = _isqrt_poly(P)
    rQ = _isqrt_poly(Q) if rP is not None else None
    if rP is None or rQ is None:
        raise NotExactSquare(f"{x} is not a square in the Puiseux fraction field")
    return FieldElem._canon(N, e // 2, c, rP, rQ, reduce_gcd=False)


# --------------------------------------------------------------- numerics


def specialize(x, s):
    """Float value of x at t = s > 0."""
    x = field(x)
    if x._c == 0:
        return 0.0
    s = float(s)
    if s <= 0:
        raise ValueError("specialization parameter must be positive")
    u = s ** (1.0 / x._N)
    # factor u**(deg) out of each Horner sum to avoid overflow at large s
    lu = math.log(u)
    dp, dq = len(x._P) - 1, len(x._Q) - 1
    p = 0.0
    for coef in x._P:
        p = p / u + coef
    q = 0.0
    for coef in x._Q:
        q = q / u + coef
    return float(x._c) * math.exp((x._e + dp - dq) * lu) * p / q


def specialize_mp(x, s, dps=50):
    """Extended-precision value (an ``mpmath.mpf``) of x at t = s."""
    x = field(x)
    with mpmath.workdps(dps):
        if x._c == 0:
            return mpmath.mpf(0)
        s = mpmath.mpf(s)
        u = s ** (mpmath.mpf(1) / x._N)
        p = mpmath.polyval(list(reversed(x._P)), u)
        q = mpmath.polyval(list(reversed(x._Q)), u)
        return +(mpmath.mpf(x._c.numerator) / x._c.denominator * u**x._e * p / q)


# ----------------------------------------------------------- text and JSON

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|(\*\*|[-+*/^()])|(t))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        num, op, var = m.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif op is not None:
            out.append(("op", "^" if op == "**" else op))
        else:
            out.append(("t", None))
        pos = m.end()
    return out


class _Parser:
    # expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)*
    # unary := ('+'|'-') unary | power ; power := atom ('^' exponent)?
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        value = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exp = self.exponent()
            if base == T:
                return FieldElem.monomial(1, exp)
            if exp.denominator != 1:
                return sqrt_chain(base, exp)
            return base ** int(exp)
        return base

    def exponent(self):
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return value
        if (kind, value) in (("op", "-"), ("op", "+")):
            self.take()
            e = self.exponent()
            return -e if value == "-" else e
        if (kind, value) == ("op", "("):
            self.take()
            e = self.expr()
            self.take(")")
            if not e.is_rational():
                raise ParseError("exponent must be rational")
            return e.to_fraction()
        raise ParseError(f"bad exponent in {self.text!r}")

    def atom(self):
        kind, value = self.take()
        if kind == "num":
            return FieldElem(value)
        if kind == "t":
            return T
        if (kind, value) == ("op", "("):
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {value!r} in {self.text!r}")


def sqrt_chain(base, exp):
    """base**exp for a rational exp whose denominator is a power of two."""
    d = exp.denominator
    y = base ** exp.numerator
    while d > 1:
        if d % 2:
            raise ParseError("non-monomial bases admit only dyadic exponents")
        y = sqrt_exact(y)
        d //= 2
    return y


def parse(text):
    """Parse text such as ``3*t^(1/2) - 2 + 7*t^(-1)`` or ``(t+1)/t``."""
    try:
        return _Parser(text).parse()
    except (DivisionByZero, ParseError):
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc)) from exc


def _terms_from_json(items):
    terms = {}
    for item in items:
        try:
            e = Fraction(item.get("e", "0"))
            c = Fraction(item["c"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad term {item!r}") from exc
        terms[e] = terms.get(e, 0) + c
    return PuiseuxPoly(terms)


def from_json(obj):
    """Inverse of ``FieldElem.to_json``; also accepts numbers and text."""
    if isinstance(obj, FieldElem):
        return obj
    if isinstance(obj, dict):
        if "num" not in obj:
            raise ParseError(f"missing 'num' in {obj!r}")
        num = _terms_from_json(obj["num"])
        den = _terms_from_json(obj["den"]) if obj.get("den") else PuiseuxPoly({0: 1})
        return FieldElem.from_polys(num, den)
    if isinstance(obj, bool):
        raise ParseError("booleans are not field elements")
    if isinstance(obj, int):
        return FieldElem(obj)
    if isinstance(obj, float):
        return FieldElem(Fraction(str(obj)))
    if isinstance(obj, str):
        return parse(obj)
    raise ParseError(f"cannot read a field element from {obj!r}")

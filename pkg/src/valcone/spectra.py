"""Valuation-level spectral data of matrices over the Puiseux field.

Eigenvalue moduli are never computed; their logarithms in base t are read off
the Newton polygon of the characteristic polynomial.  Complex-conjugate pairs
share a slope, so no field extension is needed.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DimensionMismatch, DomainError
from .matrix import FieldMatrix, to_matrix
from .puiseux import ONE, T, field, log_big


# ------------------------------------------------------------ Newton polygon


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of ``(i, val(c_i))`` for ``sum c_i x**i``.

    ``segments`` lists ``(slope, length)`` left to right; a segment of slope
    ``s`` and length ``l`` accounts for ``l`` roots with ``log_t|root| = s``.
    """

    points: tuple
    segments: tuple

    @classmethod
    def from_coefficients(cls, coeffs):
        pts = tuple((i, field(c).val()) for i, c in enumerate(coeffs) if c)
        return cls(pts, tuple(_lower_hull(pts)))

    @property
    def length(self):
        return sum(length for _, length in self.segments)

    def root_logs(self):
        out = []
        for slope, length in self.segments:
            out.extend([slope] * length)
        return out


def _lower_hull(pts):
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1) / (x2 - x1), x2 - x1))
    return segs


def newton_polygon(coeffs):
    return NewtonPolygon.from_coefficients(coeffs)


# --------------------------------------------------------------- Weyl vectors


@dataclass(frozen=True)
class WeylVector:
    """Non-increasing, zero-sum vector of rationals (closed Weyl chamber of SL(n))."""

    coords: tuple

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coords)
        object.__setattr__(self, "coords", c)
        if any(a < b for a, b in zip(c, c[1:])):
            raise ValueError(f"coordinates not non-increasing: {c}")
        if sum(c) != 0:
            raise ValueError(f"coordinates do not sum to zero: {c}")

    @classmethod
    def from_unsorted(cls, values):
        return cls(tuple(sorted((Fraction(v) for v in values), reverse=True)))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other):
        return WeylVector.from_unsorted(a + b for a, b in zip(self.coords, other.coords))

    def scale(self, k):
        k = Fraction(k)
        if k < 0:
            return self.opposite().scale(-k)
        return WeylVector(tuple(k * x for x in self.coords))

    def opposite(self):
        """Image under the opposition involution v -> -w0(v)."""
        return WeylVector(tuple(-x for x in reversed(self.coords)))

    def gap(self, i):
        """Simple root alpha_i(v) = v_i - v_{i+1}, 1-based."""
        return self.coords[i - 1] - self.coords[i]

    def chi(self, k):
        """log of the character chi_k: top k coordinates minus bottom k."""
        return sum(self.coords[:k]) - sum(self.coords[len(self.coords) - k :])

    def is_zero(self):
        return not any(self.coords)

    def to_floats(self):
        return [float(x) for x in self.coords]

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.coords) + ")"


def jordan_vector(g):
    """Sorted ``log_t`` of eigenvalue moduli of g (det 1)."""
    g = to_matrix(g)
    poly = newton_polygon(g.char_poly())
    logs = poly.root_logs()
    if len(logs) != g.n:
        raise DomainError("singular matrix: zero eigenvalue")
    return WeylVector.from_unsorted(logs)


def cartan_vector(g):
    """``Log_t`` of the Cartan projection: half the Jordan vector of g g^t."""
    g = to_matrix(g)
    return jordan_vector(g @ g.T).scale(Fraction(1, 2))


# --------------------------------------------------------------------- norms


@dataclass(frozen=True)
class RootValue:
    """The real number ``radicand ** (1/degree)`` kept exact."""

    radicand: Fraction
    degree: int

    def __float__(self):
        return float(self.radicand) ** (1.0 / self.degree)

    def _other(self, other):
        if isinstance(other, RootValue):
            if other.degree != self.degree:
                return None
            return other.radicand
        if isinstance(other, (int, Fraction)):
            if other < 0:
                return None
            return Fraction(other) ** self.degree
        return None

    def __eq__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented if not isinstance(other, (int, Fraction, RootValue)) else False
        return self.radicand == r

    def __hash__(self):
        return hash((self.radicand, self.degree))

    def __lt__(self, other):
        r = self._other(other)
        if r is None:
            return float(self) < float(other)
        return self.radicand < r

    def __le__(self, other):
        r = self._other(other)
        if r is None:
            return float(self) <= float(other)
        return self.radicand <= r

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __mul__(self, k):
        k = Fraction(k)
        if k < 0:
            raise ValueError("negative scaling of a norm value")
        return RootValue(self.radicand * k**self.degree, self.degree)

    __rmul__ = __mul__

    def __str__(self):
        return f"({self.radicand})^(1/{self.degree})"


@dataclass(frozen=True)
class WeylNorm:
    """Weyl-group invariant norm on zero-sum vectors.

    kinds: ``euclid``, ``sup``, ``lp`` (integer ``p``; p=1 is ``l1``),
    ``roots`` (sum over all roots of |alpha(v)|), ``weight`` (chi_k norm,
    top-k minus bottom-k).
    """

    kind: str
    p: int = 2
    k: int = 1

    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        if text in ("euclid", "euclidean", "l2"):
            return cls("euclid")
        if text in ("sup", "max", "linf"):
            return cls("sup")
        if text == "l1":
            return cls("lp", p=1)
        if text.startswith("lp:") or (text.startswith("l") and text[1:].isdigit()):
            p = int(text.split(":")[1] if ":" in text else text[1:])
            if p < 1:
                raise ValueError("lp needs p >= 1")
            return cls("euclid") if p == 2 else cls("lp", p=p)
        if text in ("roots", "root", "root_norm"):
            return cls("roots")
        if text.startswith("weight"):
            k = int(text.split(":")[1]) if ":" in text else 1
            return cls("weight", k=k)
        raise ValueError(f"unknown norm {text!r}")

    @property
    def name(self):
        if self.kind == "lp":
            return "l1" if self.p == 1 else f"l{self.p}"
        if self.kind == "weight":
            return f"weight:{self.k}"
        return self.kind

    def is_exact_rational(self):
        return self.kind in ("sup", "roots", "weight") or (self.kind == "lp" and self.p == 1)

    def __call__(self, v):
        c = list(v)
        if self.kind == "euclid":
            return RootValue(sum(x * x for x in c), 2)
        if self.kind == "sup":
            return max((abs(x) for x in c), default=Fraction(0))
        if self.kind == "lp":
            if self.p == 1:
                return sum((abs(x) for x in c), Fraction(0))
            return RootValue(sum(abs(x) ** self.p for x in c), self.p)
        if self.kind == "roots":
            return sum((abs(a - b) for a, b in combinations(c, 2)), Fraction(0)) * 2
        if self.kind == "weight":
            n = len(c)
            if not 1 <= self.k <= n // 2:
                raise DimensionMismatch(f"weight:{self.k} needs 2k <= n = {n}")
            s = sorted(c, reverse=True)
            return sum(s[: self.k]) - sum(s[n - self.k :])
        raise ValueError(f"unknown norm kind {self.kind!r}")

    def multiplicative(self, sq_singular_values):
        """Squared multiplicative norm N_F(delta)**2 from the values sigma_i**2."""
        d = list(sq_singular_values)
        if self.kind == "roots":
            acc = ONE
            for i in range(len(d)):
                for j in range(len(d)):
                    if i != j:
                        r = d[i] / d[j]
                        acc = acc * (r if r >= ONE else r.inverse())
            return acc
        if self.kind == "sup":
            return max(x if x >= ONE else x.inverse() for x in d)
        if self.kind == "lp" and self.p == 1:
            acc = ONE
            for x in d:
                acc = acc * (x if x >= ONE else x.inverse())
            return acc
        if self.kind == "weight":
            s = sorted(d, reverse=True)
            n = len(s)
            acc = ONE
            for x in s[: self.k]:
                acc = acc * x
            for x in s[n - self.k :]:
                acc = acc / x
            return acc
        raise ValueError(f"norm {self.name} has no multiplicative form")


def as_norm(norm):
    return norm if isinstance(norm, WeylNorm) else WeylNorm.parse(norm)


def translation_length(g, norm="euclid"):
    """``||Log_t J(g)||`` for a Weyl-invariant norm."""
    return as_norm(norm)(jordan_vector(g))


def distance(g, h, norm="euclid"):
    """Pseudodistance between g.Id and h.Id: ``||cartan_vector(g^-1 h)||``."""
    g = to_matrix(g)
    h = to_matrix(h)
    return as_norm(norm)(cartan_vector(g.inverse() @ h))


def norm_value_str(x):
    if isinstance(x, RootValue):
        return str(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------- proximality


class Proximality(enum.Enum):
    PROXIMAL = "proximal"
    NOT_PROXIMAL = "not_proximal"
    INDETERMINATE = "indeterminate"

    def __bool__(self):
        return self is Proximality.PROXIMAL


def is_proximal(g, roots):
    """Whether alpha_i(J(g)) > 1 for each simple root index i in ``roots``.

    Positive valuation gaps certify proximality.  A zero gap is resolved
    exactly only in dimension 2 (via the sign of tr^2 - 4); otherwise the
    answer is ``INDETERMINATE``.
    """
    g = to_matrix(g)
    n = g.n
    v = jordan_vector(g)
    roots = sorted(set(roots))
    for i in roots:
        if not 1 <= i < n:
            raise DimensionMismatch(f"simple root index {i} out of range for SL({n})")
    if all(v.gap(i) > 0 for i in roots):
        return Proximality.PROXIMAL
    if n == 2:
        tr = g.trace()
        return Proximality.PROXIMAL if tr * tr - 4 > 0 else Proximality.NOT_PROXIMAL
    return Proximality.INDETERMINATE


# ------------------------------------------------------------- cross-checks


def is_diagonal(m):
    return all(not m[i, j] for i in range(m.shape[0]) for j in range(m.shape[1]) if i != j)


def dedekind_cut_crosscheck(g, norm="roots", tol=Fraction(1, 64)):
    """Compare ``log_t N_F(delta(Id, g Id))`` with ``||cartan_vector(g)||``.

    N_F is evaluated multiplicatively on the exact singular values, so g g^t
    must be diagonal; the logarithm comes from the Dedekind cut of N_F**2.
    """
    norm = as_norm(norm)
    g = to_matrix(g)
    tol = Fraction(tol)
    s = g @ g.T
    if not is_diagonal(s):
        raise DomainError("crosscheck needs g g^t diagonal (exact singular values)")
    sq = [s[i, i] for i in range(g.n)]
    n2 = norm.multiplicative(sq)
    lo, hi = log_big(n2, T, tol)
    mid = (lo + hi) / 2 / 2
    return abs(mid - norm(cartan_vector(g))) <= tol


def riemannian_bounds(g):
    """(tr(g g^t)/n, exp(d_R(g Id, Id)), tr(g g^t)**(2(n-1))) for a real matrix."""
    g = np.asarray(g, dtype=float)
    n = g.shape[0]
    s = g @ g.T
    mu = np.linalg.eigvalsh(s)
    d_r = math.sqrt(float(np.sum(np.log(mu) ** 2)))
    tr = float(np.trace(s))
    return tr / n, math.exp(d_r), tr ** (2 * (n - 1))


# ------------------------------------------------------------------ tables


def length_table_csv(rep, words, norms):
    """CSV: one row per word with Jordan coordinates and translation lengths."""
    from .matrix import word as _word

    norms = [as_norm(x) for x in norms]
    words = [_word(w) for w in words]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    n = rep.n
    header = ["word"] + [f"L{i + 1}" for i in range(n)]
    for nm in norms:
        header += [nm.name, f"{nm.name}_decimal"]
    writer.writerow(header)
    for w in sorted(words, key=lambda w: w.sort_key()):
        v = jordan_vector(rep.eval_word(w))
        row = [str(w)] + [norm_value_str(x) for x in v]
        for nm in norms:
            val = nm(v)
            row += [norm_value_str(val), f"{float(val):.12g}"]
        writer.writerow(row)
    return buf.getvalue()

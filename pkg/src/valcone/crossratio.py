"""Multiplicative cross-ratios of partial flags and their periods."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    FixedFlagMismatch,
    Negative,
    NotExactlySolvable,
    NotExactSquare,
    NotPositive,
    NotProximal,
    NotTransverse,
)
from .matrix import FieldMatrix, to_matrix, word
from .puiseux import FieldElem, field, sqrt_exact
from .spectra import Proximality, is_proximal, jordan_vector


def _columns(obj):
    """A d x m FieldMatrix from a matrix or a list of column vectors."""
    if isinstance(obj, FieldMatrix):
        return obj
    cols = [list(c) for c in obj]
    return FieldMatrix.from_columns(cols)


@dataclass(frozen=True)
class Flag:
    """A k-plane ``small`` inside a (d-k)-plane ``big``, both as column spans."""

    small: FieldMatrix
    big: FieldMatrix

    def __post_init__(self):
        small, big = to_matrix(self.small), to_matrix(self.big)
        object.__setattr__(self, "small", small)
        object.__setattr__(self, "big", big)
        d, k = small.shape
        if big.shape != (d, d - k):
            raise DimensionMismatch(f"big part must be {d}x{d - k}, got {big.shape[0]}x{big.shape[1]}")
        if small.rank() != k:
            raise DimensionMismatch("columns of the small part are dependent")
        if big.rank() != d - k:
            raise DimensionMismatch("columns of the big part are dependent")
        if not 1 <= k <= d - k:
            raise DimensionMismatch(f"need 1 <= k <= d - k, got k={k}, d={d}")
        if big.hstack(small).rank() != d - k:
            raise DimensionMismatch("small part is not contained in the big part")

    @classmethod
    def from_columns(cls, small, big=None):
        small = _columns(small)
        return cls(small, small if big is None else _columns(big))

    @classmethod
    def line(cls, *entries):
        """The flag of a line in dimension 2."""
        return cls.from_columns([list(entries)])

    @property
    def d(self):
        return self.small.shape[0]

    @property
    def k(self):
        return self.small.shape[1]

    def act(self, g):
        g = to_matrix(g)
        return Flag(g @ self.small, g @ self.big)

    __rmatmul__ = act

    def same_as(self, other):
        """Equal spans for both parts."""
        return (
            self.small.hstack(other.small).rank() == self.k
            and self.big.hstack(other.big).rank() == self.d - self.k
        )

    def to_json(self):
        return {
            "small": [[x.to_json() for x in c] for c in self.small.columns()],
            "big": [[x.to_json() for x in c] for c in self.big.columns()],
        }

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            return cls.from_columns([[field(x) for x in c] for c in obj])
        small = [[field(x) for x in c] for c in obj["small"]]
        big = [[field(x) for x in c] for c in obj["big"]] if "big" in obj else None
        return cls.from_columns(small, big)


@dataclass(frozen=True)
class CrossRatioValue:
    value: FieldElem

    @property
    def log_value(self):
        return self.value.log_t()


def _pairing(f, g):
    """``a wedge B`` for the small part of f and the big part of g."""
    return f.small.hstack(g.big).det()


def _check(flags):
    d, k = flags[0].d, flags[0].k
    for f in flags:
        if (f.d, f.k) != (d, k):
            raise DimensionMismatch("flags of different type")


def cr_k(f1, f2, f3, f4):
    """``(a ^ C)/(a ^ B) * (d ^ B)/(d ^ C)`` for flags (a,A), (b,B), (c,C), (d,D)."""
    _check((f1, f2, f3, f4))
    num1, den1 = _pairing(f1, f3), _pairing(f1, f2)
    num2, den2 = _pairing(f4, f2), _pairing(f4, f3)
    if not den1 or not den2:
        raise NotTransverse("a denominator pairing vanishes")
    return CrossRatioValue(num1 * num2 / (den1 * den2))


def sym_log_cr(f1, f2, f3, f4, assert_positive=False):
    """``(1/2) log_t (cr(1,2,3,4) cr(3,4,1,2))`` as an exact rational."""
    prod = cr_k(f1, f2, f3, f4).value * cr_k(f3, f4, f1, f2).value
    if not prod:
        raise NotTransverse("cross-ratio product vanishes")
    if assert_positive and not prod > 1:
        raise NotPositive(f"cross-ratio product {prod} is not > 1")
    return prod.log_t() / 2


@dataclass(frozen=True)
class PeriodResult:
    period: Fraction
    jordan_chi: Fraction
    k: int

    @property
    def matches(self):
        return self.period == self.jordan_chi


def period(rep, gamma, attracting, repelling, x):
    """``[gamma_-, x, gamma x, gamma_+]`` compared with ``chi_k`` of the Jordan vector."""
    g = rep.eval_word(word(gamma)) if not isinstance(gamma, FieldMatrix) else gamma
    _check((attracting, repelling, x))
    d, k = x.d, x.k
    roots = {k, d - k}
    if is_proximal(g, roots) is not Proximality.PROXIMAL:
        raise NotProximal(f"{gamma} is not proximal for k={k}")
    for name, f in (("attracting", attracting), ("repelling", repelling)):
        if not f.act(g).same_as(f):
            raise FixedFlagMismatch(f"{name} flag is not fixed by {gamma}")
    value = sym_log_cr(repelling, x, x.act(g), attracting)
    return PeriodResult(value, jordan_vector(g).chi(k), k)


def fixed_flags(rep, gamma):
    """Exact (attracting, repelling) line flags of an SL(2) element."""
    g = rep.eval_word(word(gamma)) if not isinstance(gamma, FieldMatrix) else gamma
    if g.n != 2:
        raise DimensionMismatch("fixed flags are exact only for n = 2")
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    tr = a + d
    disc = tr * tr - 4
    if not disc > 0:
        raise NotProximal(f"tr^2 - 4 = {disc} is not positive")
    try:
        root = sqrt_exact(disc)
    except (NotExactSquare, Negative) as exc:
        raise NotExactlySolvable(f"tr^2 - 4 = {disc} is not an exact square") from exc
    sign = 1 if tr > 0 else -1
    lam_plus = (tr + root * sign) / 2
    lam_minus = (tr - root * sign) / 2

    def eigenline(lam):
        for v in ((b, lam - a), (lam - d, c)):
            if v[0] or v[1]:
                lead = v[0] if v[0] else v[1]
                return Flag.line(v[0] / lead, v[1] / lead)
        raise NotExactlySolvable("scalar matrix has no distinguished eigenline")

    return eigenline(lam_plus), eigenline(lam_minus)

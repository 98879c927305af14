"""Exact dense linear algebra over the Puiseux field, group words, representations."""

from __future__ import annotations

import contextlib
import contextvars
import itertools
import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath
import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, DomainError, ParseError, UnknownGenerator
from .puiseux import ONE, ZERO, FieldElem, field, specialize, specialize_mp

_BUDGET = contextvars.ContextVar("valcone_budget", default=None)


class NotSpecialLinear(DomainError):
    pass


@contextlib.contextmanager
def budget(max_terms):
    """Cap the total term count of any matrix produced inside the block."""
    token = _BUDGET.set(max_terms)
    try:
        yield
    finally:
        _BUDGET.reset(token)


def _check_budget(m):
    cap = _BUDGET.get()
    if cap is not None:
        total = sum(x.term_count() for row in m.rows for x in row)
        if total > cap:
            raise BudgetExceeded(f"matrix with {total} terms exceeds budget {cap}")
    return m


class FieldMatrix:
    """Immutable matrix with ``FieldElem`` entries (not necessarily square)."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("ragged matrix")
        self.rows = rows
        self._hash = None

    @classmethod
    def _wrap(cls, rows):
        obj = object.__new__(cls)
        obj.rows = rows
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n):
        return cls._wrap(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, *entries):
        d = [field(x) for x in entries]
        n = len(d)
        return cls._wrap(tuple(tuple(d[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, cols):
        cols = [[field(x) for x in c] for c in cols]
        return cls._wrap(tuple(tuple(c[i] for c in cols) for i in range(len(cols[0]))))

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def n(self):
        r, c = self.shape
        if r != c:
            raise DimensionMismatch(f"matrix is {r}x{c}, not square")
        return r

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def columns(self):
        return [list(col) for col in zip(*self.rows)]

    def __eq__(self, other):
        if isinstance(other, FieldMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"FieldMatrix([{body}])"

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in addition")
        return FieldMatrix._wrap(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in subtraction")
        return FieldMatrix._wrap(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return FieldMatrix._wrap(tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c):
        c = field(c)
        return FieldMatrix._wrap(tuple(tuple(c * a for a in r) for r in self.rows))

    def __matmul__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return _check_budget(FieldMatrix._wrap(tuple(out)))

    @property
    def T(self):
        return FieldMatrix._wrap(tuple(zip(*self.rows)))

    def trace(self):
        acc = ZERO
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = FieldMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.n
        if n == 0:
            return ONE
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        m = [list(r) for r in self.rows]
        sign = 1
        prev = ONE
        for k in range(n - 1):
            if not m[k][k]:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return ZERO
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            prev = m[k][k]
        d = m[n - 1][n - 1]
        return -d if sign < 0 else d

    def _faddeev(self):
        """Characteristic polynomial coefficients and the last auxiliary matrix."""
        n = self.n
        coeffs = [ZERO] * (n + 1)
        coeffs[n] = ONE
        I = FieldMatrix.identity(n)
        M = FieldMatrix.identity(n).scale(0)
        for k in range(1, n + 1):
            M = self @ M + I.scale(coeffs[n - k + 1])
            coeffs[n - k] = -((self @ M).trace()) / k
        return coeffs, M

    def char_poly(self):
        """Coefficients c_0..c_n of det(lambda*I - self) (Faddeev-LeVerrier)."""
        return self._faddeev()[0]

    def adjugate(self):
        coeffs, M = self._faddeev()
        # A * M_n = -c_0 I, and adj(A) = (-1)^(n+1) * M_n
        return M if self.n % 2 else -M

    def inverse(self):
        coeffs, M = self._faddeev()
        c0 = coeffs[0]
        if not c0:
            raise DomainError("singular matrix")
        return M.scale(-c0.inverse())

    def rank(self):
        """Exact rank by Gaussian elimination."""
        m = [list(r) for r in self.rows]
        rows, cols = self.shape
        rank = 0
        for c in range(cols):
            piv = next((i for i in range(rank, rows) if m[i][c]), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            inv = m[rank][c].inverse()
            for i in range(rank + 1, rows):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
            rank += 1
            if rank == rows:
                break
        return rank

    def hstack(self, other):
        if self.shape[0] != other.shape[0]:
            raise DimensionMismatch("row counts differ")
        return FieldMatrix._wrap(tuple(r + s for r, s in zip(self.rows, other.rows)))

    def term_count(self):
        return sum(x.term_count() for r in self.rows for x in r)

    # ------------------------------------------------------------- numerics
    def specialize(self, s):
        return np.array([[specialize(x, s) for x in r] for r in self.rows], dtype=float)

    def specialize_mp(self, s, dps=50):
        with mpmath.workdps(dps):
            return mpmath.matrix([[specialize_mp(x, s, dps) for x in r] for r in self.rows])

    def substitute_power(self, q):
        return FieldMatrix._wrap(tuple(tuple(x.substitute_power(q) for x in r) for r in self.rows))

    def is_rational(self):
        return all(x.is_rational() for r in self.rows for x in r)

    def to_json(self):
        return [[x.to_json() for x in r] for r in self.rows]


def to_matrix(obj):
    if isinstance(obj, FieldMatrix):
        return obj
    return FieldMatrix(obj)


# ------------------------------------------------------------- exterior algebra


def plucker(vectors):
    """k x k minors (rows in lexicographic order) of the d x k column matrix."""
    m = to_matrix(vectors)
    d, k = m.shape
    if not 1 <= k <= d:
        raise DimensionMismatch(f"need 1 <= k <= d, got k={k}, d={d}")
    out = []
    for idx in itertools.combinations(range(d), k):
        out.append(FieldMatrix._wrap(tuple(m.rows[i] for i in idx)).det())
    return out


wedge = plucker


def top_form(u, v):
    """u wedge v in Lambda^d F^d = F, with e_1 ^ ... ^ e_d -> 1."""
    u = to_matrix(u)
    v = to_matrix(v)
    if u.shape[0] != v.shape[0] or u.shape[1] + v.shape[1] != u.shape[0]:
        raise DimensionMismatch(f"top_form needs complementary degrees, got {u.shape} and {v.shape}")
    return u.hstack(v).det()


def _perm_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def top_form_plucker(pu, pv, d, k):
    """Pairing of Plucker vectors of complementary degrees k and d-k."""
    subsets = list(itertools.combinations(range(d), k))
    comp = {s: tuple(i for i in range(d) if i not in s) for s in subsets}
    index_v = {s: i for i, s in enumerate(itertools.combinations(range(d), d - k))}
    acc = ZERO
    for i, s in enumerate(subsets):
        if pu[i]:
            c = comp[s]
            term = pu[i] * pv[index_v[c]]
            acc = acc + (term if _perm_sign(s + c) > 0 else -term)
    return acc


# ------------------------------------------------------------------ words

_LETTER = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+)|('+))?$")


@dataclass(frozen=True)
class GroupWord:
    """Word in generators and inverses; ``letters`` holds (name, +1 | -1)."""

    letters: tuple = ()

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in ("", "1", "e", "id"):
            return cls(())
        letters = []
        for tok in text.split():
            m = _LETTER.match(tok)
            if not m:
                raise ParseError(f"bad word token {tok!r}")
            name, power, primes = m.groups()
            k = int(power) if power is not None else (-1) ** len(primes) if primes else 1
            letters.extend([(name, 1 if k > 0 else -1)] * abs(k))
        return cls(tuple(letters))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(n if e > 0 else f"{n}^-1" for n, e in self.letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        return GroupWord(self.letters + other.letters)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return GroupWord(self.letters * k)

    def inverse(self):
        return GroupWord(tuple((n, -e) for n, e in reversed(self.letters)))

    def generators(self):
        return {n for n, _ in self.letters}

    def reduced(self):
        out = []
        for letter in self.letters:
            if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                out.pop()
            else:
                out.append(letter)
        return GroupWord(tuple(out))

    def cyclically_reduced(self):
        ls = list(self.reduced().letters)
        while len(ls) > 1 and ls[0][0] == ls[-1][0] and ls[0][1] == -ls[-1][1]:
            ls = ls[1:-1]
        return GroupWord(tuple(ls))

    def canonical(self):
        """Free + cyclic reduction, then the lexicographically least rotation."""
        ls = self.cyclically_reduced().letters
        if not ls:
            return GroupWord(())
        key = lambda w: tuple((n, 0 if e > 0 else 1) for n, e in w)
        best = min((ls[i:] + ls[:i] for i in range(len(ls))), key=key)
        return GroupWord(best)

    def sort_key(self):
        return (len(self.letters), tuple((n, 0 if e > 0 else 1) for n, e in self.letters))


def word(w):
    if isinstance(w, GroupWord):
        return w
    return GroupWord.parse(w)


def parse_words(text):
    """Comma-separated list of words."""
    return [GroupWord.parse(part) for part in text.split(",")]


# --------------------------------------------------------- representations


@dataclass
class Representation:
    """Generators -> square matrices of a common size n with det 1."""

    generators: dict
    symmetric: bool = False
    field_kind: str = "puiseux"
    check_det: bool = True
    _inv: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.generators = {name: to_matrix(m) for name, m in self.generators.items()}
        sizes = {m.n for m in self.generators.values()}
        if len(sizes) > 1:
            raise DimensionMismatch(f"generators have different sizes {sorted(sizes)}")
        self._n = sizes.pop() if sizes else 0
        if self.check_det:
            for name, m in self.generators.items():
                d = m.det()
                if self.field_kind == "real" and d.is_rational():
                    ok = abs(float(d.to_fraction()) - 1.0) <= 1e-9
                else:
                    ok = d == ONE
                if not ok:
                    raise NotSpecialLinear(f"det of generator {name!r} is {d}, not 1")

    @property
    def n(self):
        return self._n

    def names(self):
        return sorted(self.generators)

    def generating_set(self):
        """The words of the generating set F (inverses included if symmetric)."""
        out = [GroupWord(((name, 1),)) for name in self.names()]
        if self.symmetric:
            out += [GroupWord(((name, -1),)) for name in self.names()]
        return out

    def inverse_of(self, name):
        if name not in self._inv:
            self._inv[name] = self.generators[name].inverse()
        return self._inv[name]

    def eval_word(self, w):
        w = word(w)
        if self._n == 0 and not w.letters:
            raise DimensionMismatch("empty representation")
        result = FieldMatrix.identity(self._n)
        for name, e in w.letters:
            if name not in self.generators:
                raise UnknownGenerator(name)
            result = result @ (self.generators[name] if e > 0 else self.inverse_of(name))
        return result

    def conjugate(self, h):
        """The representation g -> h g h^-1."""
        h = to_matrix(h)
        hi = h.inverse()
        return Representation(
            {k: h @ m @ hi for k, m in self.generators.items()}, self.symmetric, self.field_kind, False
        )

    def substitute_power(self, q):
        return Representation(
            {k: m.substitute_power(q) for k, m in self.generators.items()}, self.symmetric, self.field_kind, False
        )

    def to_numpy(self):
        """Float matrices; only valid when every entry is a rational constant."""
        out = {}
        for name, m in self.generators.items():
            if not m.is_rational():
                raise DomainError(f"generator {name!r} has non-constant entries")
            out[name] = np.array([[float(x.to_fraction()) for x in r] for r in m.rows])
        return out

    def specialize(self, s):
        return {name: m.specialize(s) for name, m in self.generators.items()}

    def to_json(self):
        return {
            "n": self._n,
            "field": self.field_kind,
            "symmetric": self.symmetric,
            "generators": {k: self.generators[k].to_json() for k in self.names()},
        }


def _parse_entry(x, kind):
    if kind == "real":
        if isinstance(x, str):
            try:
                return FieldElem(Fraction(x))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad real entry {x!r}") from exc
        if isinstance(x, (int, float)) and not isinstance(x, bool):
            return FieldElem(Fraction(str(x)))
        raise ParseError(f"bad real entry {x!r}")
    return field(x)


def representation_from_json(obj):
    kind = obj.get("field", "puiseux")
    if kind not in ("puiseux", "real"):
        raise ParseError(f"unknown field {kind!r}")
    gens = {}
    for name, rows in obj.get("generators", {}).items():
        if not re.match(r"^[A-Za-z][A-Za-z0-9_]*$", name):
            raise ParseError(f"bad generator name {name!r}")
        gens[name] = FieldMatrix([[_parse_entry(x, kind) for x in row] for row in rows])
    rep = Representation(gens, bool(obj.get("symmetric", False)), kind)
    if "n" in obj and gens and obj["n"] != rep.n:
        raise DimensionMismatch(f"declared n={obj['n']} but matrices are {rep.n}x{rep.n}")
    return rep


def load_representation(path):
    with open(path) as fh:
        return representation_from_json(json.load(fh))

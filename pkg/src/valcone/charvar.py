"""Trace coordinates and minimal vectors for tuples of SL(n) matrices.

Exact computations take a ``Representation``; the numeric flow works on a
mapping ``name -> ndarray``.  The scalar product is ``<P, Q> = tr(P^t Q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import BudgetExceeded, NoConvergence, NotMinimal
from .matrix import FieldMatrix, GroupWord, Representation, word
from .puiseux import ZERO
from .spectra import jordan_vector

DEFAULT_MAX_N = 4
DEFAULT_MAX_WORDS = 20000


def procesi_length(n):
    return 2**n - 1


def _alphabet(rep):
    return [w.letters[0] for w in rep.generating_set()]


def _letter_key(letter):
    return (letter[0], 0 if letter[1] > 0 else 1)


def _count_words(k, max_len):
    return sum(k**l for l in range(1, max_len + 1))


def cyclic_class_words(rep, max_len, max_words=DEFAULT_MAX_WORDS):
    """Canonical representatives of cyclic word classes of length 1..max_len.

    Yields ``(word, matrix)`` in (length, lexicographic) order; products are
    shared along common prefixes.
    """
    alphabet = sorted(_alphabet(rep), key=_letter_key)
    if _count_words(len(alphabet), max_len) > max_words:
        raise BudgetExceeded(
            f"{len(alphabet)} letters up to length {max_len} exceeds the word budget {max_words}"
        )
    mats = {
        letter: rep.generators[letter[0]] if letter[1] > 0 else rep.inverse_of(letter[0]) for letter in alphabet
    }
    found = []

    def dfs(prefix, prod):
        if prefix:
            w = GroupWord(tuple(prefix))
            if w.canonical().letters == w.letters:
                found.append((w, prod))
        if len(prefix) == max_len:
            return
        for letter in alphabet:
            if prefix and prefix[-1][0] == letter[0] and prefix[-1][1] == -letter[1]:
                continue
            # canonical words start with their least letter
            if prefix and _letter_key(letter) < _letter_key(prefix[0]):
                continue
            dfs(prefix + [letter], prod @ mats[letter] if prod is not None else mats[letter])

    dfs([], None)
    found.sort(key=lambda item: item[0].sort_key())
    return found


@dataclass
class TraceCoordinates:
    """Traces of one representative word per cyclic class."""

    entries: dict
    max_len: int

    def __getitem__(self, w):
        w = word(w).canonical()
        return self.entries[str(w)]

    def __eq__(self, other):
        return isinstance(other, TraceCoordinates) and self.entries == other.entries

    def to_json(self):
        out = {}
        for k, v in self.entries.items():
            if hasattr(v, "to_json"):
                out[k] = {"value": v.to_json(), "text": str(v)}
                if v.is_rational():
                    out[k]["decimal"] = float(v.to_fraction())
            else:
                out[k] = {"decimal": float(v)}
        return out


def trace_coordinates(rep, max_n=DEFAULT_MAX_N, max_words=DEFAULT_MAX_WORDS, max_len=None):
    """Exact traces of all cyclic word classes of length <= 2**n - 1."""
    if rep.n > max_n:
        raise BudgetExceeded(f"n = {rep.n} exceeds the cap {max_n} for trace coordinates")
    L = procesi_length(rep.n) if max_len is None else max_len
    entries = {str(w): m.trace() for w, m in cyclic_class_words(rep, L, max_words)}
    return TraceCoordinates(entries, L)


def numeric_trace_coordinates(mats, max_len):
    """Float traces for ``name -> ndarray`` over positive cyclic classes."""
    names = sorted(mats)
    out = {}

    def dfs(prefix, prod):
        if prefix:
            w = GroupWord(tuple((n, 1) for n in prefix))
            if w.canonical().letters == w.letters:
                out[str(w)] = float(np.trace(prod))
        if len(prefix) == max_len:
            return
        for n in names:
            if prefix and n < prefix[0]:
                continue
            dfs(prefix + [n], mats[n] if prod is None else prod @ mats[n])

    dfs([], None)
    return out


# ------------------------------------------------------------ minimal vectors


def symmetric_traceless_basis(n):
    """Basis of symmetric traceless n x n matrices as integer ndarrays."""
    basis = []
    for i in range(n - 1):
        x = np.zeros((n, n), dtype=int)
        x[i, i], x[i + 1, i + 1] = 1, -1
        basis.append(x)
    for i in range(n):
        for j in range(i + 1, n):
            x = np.zeros((n, n), dtype=int)
            x[i, j] = x[j, i] = 1
            basis.append(x)
    return basis


@dataclass
class MinimalityReport:
    """Residuals ``r_i = sum_j <[X_i, A_j], A_j>`` against ``basis``."""

    residuals: list
    max_abs: object
    basis: list
    norm_sq: object = None
    iterations: int = 0
    history: list = field(default_factory=list)

    @property
    def exact(self):
        return not isinstance(self.max_abs, float)

    def is_minimal(self, tol=0.0):
        return self.max_abs == 0 if self.exact else self.max_abs <= tol


def _exact_residuals(rep):
    n = rep.n
    basis = symmetric_traceless_basis(n)
    out = []
    for xb in basis:
        X = FieldMatrix(xb.tolist())
        acc = ZERO
        for A in rep.generators.values():
            C = X @ A - A @ X
            acc = acc + (C.T @ A).trace()
        out.append(acc)
    return out, basis


def _numeric_residuals(mats, basis):
    out = []
    for xb in basis:
        acc = 0.0
        for A in mats.values():
            C = xb @ A - A @ xb
            acc += float(np.sum(C * A))
        out.append(acc)
    return out


def norm_sq(mats):
    if isinstance(mats, Representation):
        acc = ZERO
        for A in mats.generators.values():
            acc = acc + (A.T @ A).trace()
        return acc
    return float(sum(np.sum(A * A) for A in mats.values()))


def minimality_residual(rep):
    """Residuals of the minimal-vector equations.

    Exact for a ``Representation`` (values are ``FieldElem``), floating for a
    mapping of ndarrays.
    """
    if isinstance(rep, Representation):
        if not rep.generators:
            return MinimalityReport([], ZERO, [], ZERO)
        res, basis = _exact_residuals(rep)
        return MinimalityReport(res, max((abs(r) for r in res), default=ZERO), basis, norm_sq(rep))
    mats = {k: np.asarray(v, dtype=float) for k, v in rep.items()}
    if not mats:
        return MinimalityReport([], 0.0, [], 0.0)
    n = next(iter(mats.values())).shape[0]
    basis = symmetric_traceless_basis(n)
    res = _numeric_residuals(mats, basis)
    return MinimalityReport(res, max(abs(r) for r in res), basis, norm_sq(mats))


def _sym_expm1(X, eps):
    """``exp(eps X) - I`` for symmetric X, accurate for small ``eps X``."""
    w, V = np.linalg.eigh(X)
    return (V * np.expm1(eps * w)) @ V.T


def _conjugation_increment(A, X, eps):
    """``exp(-eps X) A exp(eps X) - A`` without cancellation."""
    F = _sym_expm1(X, eps)
    G = _sym_expm1(X, -eps)
    return G @ A + A @ F + G @ A @ F


def minimize_real(mats, step=0.1, tol=1e-8, max_iters=10000, min_step=1e-14):
    """Norm-decreasing conjugation flow toward the minimal-vector set.

    Each iteration moves ``A_j <- exp(-eps X) A_j exp(eps X)`` with
    ``X = sum_i r_i X_i``, halving ``eps`` from ``step`` until ``||A||^2``
    decreases.  Returns ``(mats, report)`` or raises ``NoConvergence`` with
    the last (best) iterate attached.
    """
    if isinstance(mats, Representation):
        try:
            A, report = minimize_real(mats.to_numpy(), step, tol, max_iters, min_step)
        except NoConvergence as exc:
            exc.rep = from_numpy(exc.rep, mats.symmetric)
            raise
        return from_numpy(A, mats.symmetric), report
    A = {k: np.array(v, dtype=float) for k, v in mats.items()}
    if not A:
        return A, MinimalityReport([], 0.0, [], 0.0)
    n = next(iter(A.values())).shape[0]
    basis = symmetric_traceless_basis(n)
    cur = norm_sq(A)
    history = [cur]
    res = _numeric_residuals(A, basis)
    it = 0

    def fail(msg):
        report = MinimalityReport(res, max(map(abs, res)), basis, cur, it, history)
        return NoConvergence(msg.format(r=report.max_abs), A, report)

    while max(map(abs, res)) > tol:
        if it >= max_iters:
            raise fail(f"residual {{r:.3g}} after {it} iterations")
        X = sum(r * b for r, b in zip(res, basis))
        eps = step
        while True:
            with np.errstate(over="ignore", invalid="ignore"):
                D = {k: _conjugation_increment(v, X, eps) for k, v in A.items()}
                # change of ||A||^2 is 2<A, D> + ||D||^2
                delta = sum(2 * np.sum(A[k] * d) + np.sum(d * d) for k, d in D.items())
            if math.isfinite(delta) and delta < 0:
                break
            eps /= 2
            if eps < min_step:
                raise fail("line search stalled at residual {r:.3g}")
        A = {k: v + D[k] for k, v in A.items()}
        cur += delta
        history.append(cur)
        res = _numeric_residuals(A, basis)
        it += 1
    return A, MinimalityReport(res, max(map(abs, res)), basis, norm_sq(A), it, history)


def from_numpy(mats, symmetric=False):
    """Real representation with the exact binary values of the floats."""
    gens = {k: [[Fraction(float(x)) for x in row] for row in np.asarray(v)] for k, v in mats.items()}
    return Representation(gens, symmetric, "real", check_det=False)


def random_sl2(rng, scale=1.0, max_cond=50.0):
    """Random real 2x2 matrix of determinant 1 with bounded condition number."""
    while True:
        g = rng.normal(scale=scale, size=(2, 2))
        d = np.linalg.det(g)
        if abs(d) < 1e-3:
            continue
        if d < 0:
            g[:, 0] = -g[:, 0]
            d = -d
        g = g / math.sqrt(d)
        if np.linalg.cond(g) <= max_cond:
            return g


# --------------------------------------------------------- trace inequality


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def positive_words(names, max_len):
    """All words of length 1..max_len in the given letters (no reduction)."""
    out = []
    frontier = [()]
    for _ in range(max_len):
        frontier = [w + (n,) for w in frontier for n in names]
        out.extend(frontier)
    return out


def trace_inequality_ratio(mats, tol=1e-8):
    """``||g||^(2m) / (n^m (sum_w tr(w)^(2m/l(w)))^(2(n-1)))``.

    ``m = lcm(1..2^n - 1)`` and w runs over the words of length <= 2^n - 1 in
    the generating set.  Exact ``Fraction`` for a rational ``Representation``,
    float otherwise.  The input must be a minimal vector.
    """
    report = minimality_residual(mats)
    if not report.is_minimal(tol):
        raise NotMinimal(f"residual {report.max_abs} exceeds {tol}")
    if isinstance(mats, Representation):
        rep = mats
        if not all(m.is_rational() for m in rep.generators.values()):
            raise NotMinimal("trace inequality needs real (rational) matrices")
        letters = {}
        for w in rep.generating_set():
            name, e = w.letters[0]
            letters[str(w)] = rep.generators[name] if e > 0 else rep.inverse_of(name)
        n = rep.n
        L = procesi_length(n)
        m = reduce(_lcm, range(1, L + 1), 1)
        total = Fraction(0)
        cache = {(): FieldMatrix.identity(n)}
        for w in positive_words(sorted(letters), L):
            cache[w] = cache[w[:-1]] @ letters[w[-1]]
            tr = cache[w].trace().to_fraction()
            total += tr ** (2 * m // len(w))
        norm2 = report.norm_sq.to_fraction()
        return norm2**m / (Fraction(n) ** m * total ** (2 * (n - 1)))
    A = {k: np.asarray(v, dtype=float) for k, v in mats.items()}
    n = next(iter(A.values())).shape[0]
    L = procesi_length(n)
    m = reduce(_lcm, range(1, L + 1), 1)
    logs = []
    cache = {(): np.eye(n)}
    for w in positive_words(sorted(A), L):
        cache[w] = cache[w[:-1]] @ A[w[-1]]
        tr = abs(float(np.trace(cache[w])))
        if tr > 0:
            logs.append((2 * m / len(w)) * math.log(tr))
    top = max(logs)
    log_total = top + math.log(sum(math.exp(x - top) for x in logs))
    log_ratio = m * math.log(norm_sq(A)) - m * math.log(n) - 2 * (n - 1) * log_total
    return math.exp(log_ratio)


# ------------------------------------------------------- closed-point test


def closed_point_report(rep):
    """Both sides of the closed-point criterion for an exact minimal vector."""
    report = minimality_residual(rep)
    if report.max_abs != 0:
        raise NotMinimal(f"residual {report.max_abs} is not zero")
    total = ZERO
    for w in rep.generating_set():
        g = rep.eval_word(w)
        total = total + (g @ g.T).trace()
    big = total.val() < 0
    witness = None
    for w, m in cyclic_class_words(rep, procesi_length(rep.n)):
        if not jordan_vector(m).is_zero():
            witness = w
            break
    return {
        "trace_sum": total,
        "trace_sum_val": total.val(),
        "big": big,
        "witness": witness,
        "agree": big == (witness is not None),
    }


def closed_point_witness(rep):
    """True iff the trace sum over the generating set is a big element."""
    return closed_point_report(rep)["big"]

"""Length functions, the normalized boundary map, and rescaled specializations.

Exact length functions come from Jordan vectors over the Puiseux field; the
numeric side specializes ``t = s`` and divides log-moduli of eigenvalues by a
scale ``lambda`` (``ln s`` by default) as a consistency witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from ._parallel import pmap
from .errors import NotBoundaryPoint, NumericBreakdown, ZeroLengthFunction
from .matrix import GroupWord, Representation, parse_words, word
from .puiseux import ZERO, FieldElem
from .spectra import WeylVector, as_norm, jordan_vector


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _as_words(words):
    if isinstance(words, str):
        return parse_words(words)
    return [word(w) for w in words]


def _unique_sorted(words):
    seen = {}
    for w in words:
        seen.setdefault(str(w), w)
    return sorted(seen.values(), key=GroupWord.sort_key)


@dataclass
class LengthFunction:
    """Weyl-chamber vectors for a list of words."""

    words: list
    values: dict
    scalarizations: dict = field(default_factory=dict)

    def __getitem__(self, w):
        return self.values[str(word(w))]

    @property
    def denominator(self):
        """Least D with every coordinate in (1/D)Z."""
        return _denominator(x for v in self.values.values() for x in v)

    def is_zero(self):
        return all(v.is_zero() for v in self.values.values())

    def l1(self):
        return sum((abs(x) for v in self.values.values() for x in v), Fraction(0))


def _denominator(values):
    d = 1
    for x in values:
        d = _lcm(d, Fraction(x).denominator)
    return d


def length_function(rep, words, norms=()):
    """Exact Jordan vectors ``L(w) = Log_t J(rho(w))`` for each word."""
    words = _unique_sorted(_as_words(words))
    vectors = pmap(lambda w: jordan_vector(rep.eval_word(w)), words)
    values = {str(w): v for w, v in zip(words, vectors)}
    scal = {}
    for norm in norms:
        nm = as_norm(norm)
        scal[nm.name] = {k: nm(v) for k, v in values.items()}
    return LengthFunction(words, values, scal)


def trace_sum(rep):
    """``sum over the generating set of tr(rho(eta) rho(eta)^t)``."""
    total = ZERO
    for w in rep.generating_set():
        g = rep.eval_word(w)
        total = total + (g @ g.T).trace()
    return total


@dataclass
class ThetaValue:
    normalized: dict
    denominator: Fraction
    trace_sum: FieldElem

    def __getitem__(self, w):
        return self.normalized[str(word(w))]


def theta(rep, words):
    """Length function divided by ``log_t(2 + trace_sum)``."""
    S = trace_sum(rep)
    if S.val() >= 0:
        raise NotBoundaryPoint(f"trace sum {S} is bounded")
    denom = (S + 2).log_t()
    L = length_function(rep, words)
    return ThetaValue({k: v.scale(1 / denom) for k, v in L.values.items()}, denom, S)


def projectivize(L):
    """Normalize by the l1 norm of all coordinates over the word list."""
    total = L.l1()
    if total == 0:
        raise ZeroLengthFunction("length function vanishes on every word")
    inv = 1 / total
    return LengthFunction(list(L.words), {k: v.scale(inv) for k, v in L.values.items()})


# ----------------------------------------------------------- numeric side


def log_moduli(m):
    """Descending log-moduli of the eigenvalues of a float matrix."""
    ev = np.linalg.eigvals(np.asarray(m, dtype=float))
    mod = np.abs(ev)
    if not np.all(np.isfinite(mod)) or np.any(mod == 0):
        raise NumericBreakdown("eigenvalue is zero or not finite")
    return sorted((math.log(x) for x in mod), reverse=True)


def log_moduli_mp(m, dps=50):
    with mpmath.workdps(dps):
        ev = mpmath.eig(m, left=False, right=False)
        mods = [abs(x) for x in ev]
        if any(x == 0 for x in mods):
            raise NumericBreakdown("eigenvalue is zero at extended precision")
        return sorted((mpmath.log(x) for x in mods), reverse=True)


@dataclass
class Sample:
    s: float
    scale: float
    rescaled: dict
    deviation: dict


@dataclass
class DegenerationTrace:
    samples: list
    exact: dict
    extrapolation: dict
    extrapolation_error: dict

    def max_deviation(self, i):
        return max(self.samples[i].deviation.values(), default=0.0)

    def csv_rows(self):
        """``(s, word, coordinates..., deviation)`` sorted by word then sample."""
        rows = []
        for w in self.exact:
            for smp in self.samples:
                rows.append((smp.s, w, *smp.rescaled[w], smp.deviation[w]))
        return rows


def extrapolate(scales, values, last=3):
    """Least-squares fit of ``c0 + c1/lambda`` on the last samples; returns c0."""
    lam = np.asarray(scales[-last:], dtype=float)
    y = np.asarray(values[-last:], dtype=float)
    if len(lam) < 2:
        return y[..., -1] if y.ndim else float(y)
    A = np.column_stack([np.ones_like(lam), 1 / lam])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    return coef[0]


def _letter_matrices(rep):
    mats = {}
    for name in rep.names():
        mats[(name, 1)] = rep.generators[name]
        mats[(name, -1)] = rep.inverse_of(name)
    return mats


def cone_consistency(rep, words, params, scales=None, confirm_dps=50, confirm_tol=1e-6):
    """Rescaled numeric Jordan vectors at ``t = s_k`` versus the exact ones."""
    params = [float(s) for s in params]
    if any(s <= 1 for s in params) or any(a >= b for a, b in zip(params, params[1:])):
        raise ValueError("specialization parameters must be increasing and > 1")
    scales = [math.log(s) for s in params] if scales is None else [float(x) for x in scales]
    words = _unique_sorted(_as_words(words))
    exact = length_function(rep, words).values
    letters = _letter_matrices(rep)

    def one(idx):
        s, lam = params[idx], scales[idx]
        num = {k: m.specialize(s) for k, m in letters.items()}
        hi = {k: m.specialize_mp(s, confirm_dps) for k, m in letters.items()}
        rescaled, dev = {}, {}
        for w in words:
            g = np.eye(rep.n)
            with mpmath.workdps(confirm_dps):
                G = mpmath.eye(rep.n)
                for letter in w.letters:
                    g = g @ num[letter]
                    G = G * hi[letter]
            lo = log_moduli(g)
            ref = log_moduli_mp(G, confirm_dps)
            r = tuple(x / lam for x in lo)
            gap = max(abs(a - float(b)) / lam for a, b in zip(lo, ref))
            if gap > confirm_tol:
                raise NumericBreakdown(f"double and extended precision disagree by {gap:.3g} for {w} at s={s:g}")
            rescaled[str(w)] = r
            dev[str(w)] = max(abs(a - float(b)) for a, b in zip(r, exact[str(w)]))
        return Sample(s, lam, rescaled, dev)

    samples = pmap(one, range(len(params)))
    extra, err = {}, {}
    for w in exact:
        ys = np.array([smp.rescaled[w] for smp in samples])
        c0 = extrapolate(scales, ys)
        extra[w] = tuple(float(x) for x in np.atleast_1d(c0))
        err[w] = max(abs(a - float(b)) for a, b in zip(extra[w], exact[w]))
    return DegenerationTrace(samples, {k: v for k, v in exact.items()}, extra, err)


# --------------------------------------------------------- pinch and twist

DEMO_WORDS = ("a", "b", "a b", "a a b", "a b b")
DEMO_K = (1, 2, 4, 8, 16, 32, 64)


def _markov_pair(h):
    """Symmetric (A, B) in SL(2,R) with tr A = 2cosh(h) on a cusped torus.

    The traces satisfy x^2 + y^2 + z^2 = xyz with y = z, so the commutator
    has trace -2.
    """
    x = 2 * mpmath.cosh(h)
    y = x / mpmath.sqrt(x - 2)
    eh = mpmath.exp(h)
    p = y / (1 + eh)
    s = y * eh / (1 + eh)
    q = mpmath.sqrt(p * s - 1)
    A = mpmath.matrix([[eh, 0], [0, 1 / eh]])
    B = mpmath.matrix([[p, q], [q, s]])
    return A, B


def _sl2_log_moduli(g):
    tr = abs(g[0, 0] + g[1, 1])
    ell = mpmath.acosh(tr / 2) if tr > 2 else mpmath.mpf(0)
    return ell, -ell


def _eval_mp(mats, w):
    g = mpmath.eye(2)
    for name, _ in w.letters:
        g = g * mats[name]
    return g


def _family_report(build, ks, words, dps):
    words = [word(w) for w in words]
    scales, rescaled, tr_minus_2 = [], [], []
    with mpmath.workdps(dps):
        for k in ks:
            mats = build(k)
            S = sum(mpmath.fsum(m[i, j] ** 2 for i in range(2) for j in range(2)) for m in mats.values())
            lam = mpmath.log(S)
            scales.append(float(lam))
            rescaled.append([[float(x / lam) for x in _sl2_log_moduli(_eval_mp(mats, w))] for w in words])
            a = mats["a"]
            tr_minus_2.append(float(a[0, 0] + a[1, 1] - 2))
    ys = np.array(rescaled)
    limits = {str(w): tuple(float(x) for x in extrapolate(scales, ys[:, i, :])) for i, w in enumerate(words)}
    total = sum(abs(x) for v in limits.values() for x in v)
    projective = {w: tuple(x / total for x in v) for w, v in limits.items()}
    logk = np.log(np.asarray(ks, dtype=float))
    logd = np.log(np.asarray(tr_minus_2))
    exponent = float(np.polyfit(logk, logd, 1)[0])
    return {
        "k": list(ks),
        "scale": scales,
        "trace_minus_2": tr_minus_2,
        "growth_exponent": exponent,
        "limit": limits,
        "projective_limit": projective,
    }


def pinch_family(k):
    """Hyperbolic length of ``a`` shrinks like 1/k (traces of b grow like k)."""
    A, B = _markov_pair(mpmath.mpf(1) / (2 * k))
    return {"a": A, "b": B}


def twist_family(k):
    """``b`` is twisted along the axis of ``a`` by ``diag(e^(pi k), e^(-pi k))``."""
    A, B = _markov_pair(mpmath.mpf(1) / 2)
    D = mpmath.matrix([[mpmath.exp(mpmath.pi * k / 2), 0], [0, mpmath.exp(-mpmath.pi * k / 2)]])
    return {"a": A, "b": D * B * D}


def pinch_twist_demo(ks=DEMO_K, words=DEMO_WORDS, dps=60):
    """Two degenerating families with equal projective limits.

    The families differ in how ``tr(rho_k(a)) - 2`` behaves: it decays like
    ``k^-2`` under pinching and stays constant under twisting.
    """
    pinch = _family_report(pinch_family, ks, words, dps)
    twist = _family_report(twist_family, ks, words, dps)
    diff = max(
        abs(a - b)
        for w in pinch["projective_limit"]
        for a, b in zip(pinch["projective_limit"][w], twist["projective_limit"][w])
    )
    return {
        "words": [str(word(w)) for w in words],
        "pinch": pinch,
        "twist": twist,
        "limit_difference": diff,
        "limits_agree": diff <= 0.05,
        "observable": "growth exponent of tr(a) - 2 in k",
        "observable_differs": abs(pinch["growth_exponent"] - twist["growth_exponent"]) > 1,
    }

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import rand_flag, rand_invertible, rand_sl
from valcone.crossratio import Flag, cr_k, fixed_flags, period, sym_log_cr
from valcone.errors import (
    DimensionMismatch,
    FixedFlagMismatch,
    NotExactlySolvable,
    NotPositive,
    NotProximal,
    NotTransverse,
)
from valcone.matrix import FieldMatrix, Representation
from valcone.puiseux import T

TI = 1 / T
L = Flag.line
TYPES = [(2, 1), (3, 1), (4, 1), (4, 2)]


def tuple_d2():
    return L(0, 1), L(1, 1), L(T, TI), L(1, 0)


def test_cr_examples():
    f = tuple_d2()
    assert cr_k(*f).value == T**2
    with pytest.raises(NotTransverse):
        cr_k(f[0], f[0], f[2], f[3])
    assert cr_k(f[0], f[1], f[1], f[3]).value == 1


def test_sym_log_examples():
    f = tuple_d2()
    assert sym_log_cr(*f) == 2
    assert sym_log_cr(f[2], f[3], f[0], f[1]) == 2
    assert sym_log_cr(*f, assert_positive=True) == 2
    with pytest.raises(NotPositive):
        sym_log_cr(f[0], f[2], f[1], f[3], assert_positive=True)


def test_period_examples():
    rep = Representation({"g": FieldMatrix.diag(T, TI), "h": FieldMatrix.diag(T**3, TI**3)})
    res = period(rep, "g", L(1, 0), L(0, 1), L(1, 1))
    assert res.period == 2 == res.jordan_chi
    assert period(rep, "h", L(1, 0), L(0, 1), L(1, 1)).period == 6

    rep4 = Representation({"g": FieldMatrix.diag(T**2, T, TI, TI**2)})
    e = [[int(i == j) for j in range(4)] for i in range(4)]
    att = Flag.from_columns([e[0], e[1]])
    rpl = Flag.from_columns([e[2], e[3]])
    x = Flag.from_columns([[1, 2, 3, 5], [1, -1, 4, 7]])
    res = period(rep4, "g", att, rpl, x)
    assert res.k == 2 and res.period == 6 and res.matches


def test_period_errors():
    rep = Representation({"g": FieldMatrix.diag(T, TI), "u": [[1, T], [0, 1]]})
    with pytest.raises(FixedFlagMismatch):
        period(rep, "g", L(1, 1), L(0, 1), L(1, 2))
    with pytest.raises(NotProximal):
        period(rep, "u", L(1, 0), L(0, 1), L(1, 1))


def test_fixed_flag_examples():
    rep = Representation(
        {"u": [[T + 1, 1], [T, 1]], "g": FieldMatrix.diag(T, TI), "m": [[T, 1], [0, TI]]}
    )
    with pytest.raises(NotExactlySolvable):
        fixed_flags(rep, "u")
    att, rpl = fixed_flags(rep, "g")
    assert att.same_as(L(1, 0)) and rpl.same_as(L(0, 1))
    att, rpl = fixed_flags(rep, "m")
    assert att.same_as(L(1, 0))
    assert rpl.same_as(L(1, TI - T))
    res = period(rep, "m", att, rpl, L(1, 1))
    assert res.matches and res.period == 2


def test_flag_validation():
    with pytest.raises(DimensionMismatch):
        Flag.from_columns([[1, 0, 0]], [[0, 1, 0], [0, 0, 1]])
    with pytest.raises(DimensionMismatch):
        Flag.from_columns([[1, 0, 0], [0, 1, 0]])


def test_flag_json_roundtrip():
    f = Flag.from_columns([[1, 0, T]], [[1, 0, T], [0, 1, 0]])
    assert Flag.from_json(f.to_json()) == f


def _config(seed, n):
    rng = np.random.default_rng(seed)
    d, k = TYPES[int(rng.integers(len(TYPES)))]
    return rng, d, k, [rand_flag(rng, d, k) for _ in range(n)]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_lift_independence(seed):
    rng, d, k, f = _config(seed, 4)
    try:
        base = cr_k(*f).value
    except NotTransverse:
        return
    S, B = rand_invertible(rng, k), rand_invertible(rng, d - k)
    f0 = Flag(f[0].small @ S, f[0].big @ B)
    f3 = Flag(f[3].small @ S, f[3].big @ B)
    assert cr_k(f0, f[1], f[2], f3).value == base


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_sl_invariance(seed):
    rng, d, k, f = _config(seed, 4)
    try:
        base = cr_k(*f).value
    except NotTransverse:
        return
    g = rand_sl(rng, n=d, factors=3, simple=True)
    assert cr_k(*(x.act(g) for x in f)).value == base


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_cocycle_identities(seed):
    _, _, _, (f1, f2, f3, f4, f5) = _config(seed, 5)
    try:
        lhs = sym_log_cr(f1, f2, f4, f5)
        rhs = sym_log_cr(f1, f2, f3, f5) + sym_log_cr(f1, f3, f4, f5)
        swap = sym_log_cr(f4, f5, f1, f2)
    except NotTransverse:
        return
    assert lhs == rhs
    assert swap == lhs


def test_positive_configurations():
    # lines at increasing slopes in cyclic order: the cross-ratio exceeds 1
    for a, b, c, d in [(0, 1, 2, 3), (-2, Fraction(1, 2), 1, 5), (0, 1, T, T**2)]:
        f = [L(1, x) for x in (a, b, c, d)]
        assert cr_k(*f).value > 1

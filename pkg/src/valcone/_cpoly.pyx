# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense integer polynomial kernels; same API as ``_poly``."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t
from math import gcd as _igcd

# int64 path is taken when bits(a) + bits(b) + bits(len) stays below this
cdef int _SMALL_BITS = 62


cdef int _maxbits(list a):
    cdef int m = 0, b
    for c in a:
        b = (<object>c).bit_length()
        if b > m:
            m = b
    return m


cdef int _lenbits(Py_ssize_t n):
    cdef int b = 0
    while n:
        b += 1
        n >>= 1
    return b


cpdef list trim(list a):
    cdef Py_ssize_t n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    if n != len(a):
        return a[:n]
    return a


cpdef list add(list a, list b):
    cdef Py_ssize_t i
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    for i in range(len(b)):
        out[i] = out[i] + b[i]
    return trim(out)


cpdef list sub(list a, list b):
    cdef Py_ssize_t i
    cdef list out = list(a)
    if len(b) > len(a):
        out.extend([0] * (len(b) - len(a)))
    for i in range(len(b)):
        out[i] = out[i] - b[i]
    return trim(out)


cpdef list scale(list a, object k):
    if k == 0:
        return []
    return [c * k for c in a]


cpdef list shift(list a, Py_ssize_t k):
    if not a:
        return []
    return [0] * k + list(a)


cdef list _mul_small(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef Py_ssize_t n = na + nb - 1
    cdef int64_t *x = <int64_t *> malloc(na * sizeof(int64_t))
    cdef int64_t *y = <int64_t *> malloc(nb * sizeof(int64_t))
    cdef int64_t *z = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int64_t yj
    try:
        for i in range(na):
            x[i] = a[i]
        for j in range(nb):
            y[j] = b[j]
        for i in range(n):
            z[i] = 0
        for j in range(nb):
            yj = y[j]
            if yj:
                for i in range(na):
                    z[i + j] += x[i] * yj
        return [z[i] for i in range(n)]
    finally:
        free(x)
        free(y)
        free(z)


cpdef list mul(list a, list b):
    cdef Py_ssize_t na, nb, i, j
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    na = len(a)
    nb = len(b)
    if _maxbits(a) + _maxbits(b) + _lenbits(nb) < _SMALL_BITS:
        return _mul_small(a, b)
    cdef list out = [0] * (na + nb - 1)
    cdef object bj
    for j in range(nb):
        bj = b[j]
        if bj:
            for i in range(na):
                out[i + j] = out[i + j] + a[i] * bj
    return out


cpdef object content(list a):
    cdef object g = 0
    for c in a:
        g = _igcd(g, c)
        if g == 1:
            break
    return g


cpdef list primitive(list a):
    if not a:
        return []
    cdef object g = content(a)
    if a[len(a) - 1] < 0:
        g = -g
    if g == 1:
        return list(a)
    return [c // g for c in a]


cpdef list divexact(list a, list b):
    cdef Py_ssize_t db, k, i, na
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    na = len(a)
    db = len(b) - 1
    cdef object lb = b[db], c, qk, rem
    cdef list r = list(a)
    cdef list q = [0] * (na - db) if na > db else []
    for k in range(na - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            qk, rem = divmod(c, lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[k] = qk
            for i in range(db + 1):
                r[k + i] = r[k + i] - qk * b[i]
    for i in range(db):
        if r[i]:
            raise ArithmeticError("inexact polynomial division")
    return trim(q)


cpdef list pseudo_rem(list a, list b):
    cdef Py_ssize_t db = len(b) - 1, k, i, nr
    cdef object lb = b[db], c
    cdef list r = list(a)
    while r and len(r) - 1 >= db:
        nr = len(r)
        c = r[nr - 1]
        k = nr - 1 - db
        for i in range(nr):
            r[i] = r[i] * lb
        for i in range(db + 1):
            r[k + i] = r[k + i] - c * b[i]
        r = trim(r)
    return r


cpdef list gcd(list a, list b):
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    a = primitive(a)
    b = primitive(b)
    if len(a) < len(b):
        a, b = b, a
    cdef list r
    while True:
        if len(b) == 1:
            return [1]
        r = pseudo_rem(a, b)
        if not r:
            return primitive(b)
        a, b = b, primitive(r)


cpdef list mul_top_hf(list ra, list rb, Py_ssize_t k):
    cdef Py_ssize_t m, i, j, na, nb, jm
    if not ra or not rb:
        return []
    na = len(ra)
    nb = len(rb)
    m = min(k, na + nb - 1)
    cdef list out = [0] * m
    cdef object x
    for i in range(min(na, m)):
        x = ra[i]
        if x:
            jm = min(nb, m - i)
            for j in range(jm):
                out[i + j] = out[i + j] + x * rb[j]
    return out


cpdef list mul_top(list a, list b, Py_ssize_t k):
    if not a or not b:
        return []
    return mul_top_hf(a[::-1][:k], b[::-1][:k], k)


cpdef list pow_top(list a, object n, Py_ssize_t k):
    cdef list result = [1]
    cdef list base = a[::-1][:k]
    while n:
        if n & 1:
            result = mul_top_hf(result, base, k)
        n >>= 1
        if n:
            base = mul_top_hf(base, base, k)
    return result


cpdef list spread(list a, Py_ssize_t r):
    cdef Py_ssize_t i
    if r == 1 or not a:
        return list(a)
    cdef list out = [0] * ((len(a) - 1) * r + 1)
    for i in range(len(a)):
        out[i * r] = a[i]
    return out


cpdef list power(list a, object n):
    cdef list result = [1]
    cdef list base = list(a)
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result

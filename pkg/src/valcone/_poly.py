"""Dense integer polynomial kernels (pure Python).

Polynomials are lists of Python ints, lowest degree first, with no trailing
zeros; the zero polynomial is ``[]``.  ``_cpoly`` is a compiled drop-in with
the same functions.
"""

from math import gcd as _igcd


def trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n] if n != len(a) else a


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def scale(a, k):
    if k == 0:
        return []
    return [c * k for c in a]


def shift(a, k):
    """Multiply by u**k."""
    if not a:
        return []
    return [0] * k + list(a)


def mul(a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


def content(a):
    g = 0
    for c in a:
        g = _igcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """Divide out the content and make the leading coefficient positive."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return list(a)
    return [c // g for c in a]


def divexact(a, b):
    """Quotient of ``a`` by ``b`` in Z[u]; raises if the division is not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    q = [0] * (len(a) - db) if len(a) > db else []
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            qk, rem = divmod(c, lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[k] = qk
            for i in range(db + 1):
                r[k + i] -= qk * b[i]
    if any(r[:db]):
        raise ArithmeticError("inexact polynomial division")
    return trim(q)


def pseudo_rem(a, b):
    """Pseudo-remainder of ``a`` by ``b``: lc(b)**e * a mod b."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        c = r[-1]
        k = len(r) - 1 - db
        r = [x * lb for x in r]
        for i in range(db + 1):
            r[k + i] -= c * b[i]
        r = trim(r)
    return r


def gcd(a, b):
    """Primitive gcd in Z[u] with positive leading coefficient."""
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    ca = content(a)
    cb = content(b)
    a = primitive(a)
    b = primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while True:
        if len(b) == 1:
            return [1]
        r = pseudo_rem(a, b)
        if not r:
            return primitive(b)
        a, b = b, primitive(r)


def mul_top(a, b, k):
    """Top ``k`` coefficients of ``a*b``, highest degree first."""
    if not a or not b:
        return []
    ra = a[::-1][:k]
    rb = b[::-1][:k]
    m = min(k, len(a) + len(b) - 1)
    out = [0] * m
    for i, x in enumerate(ra):
        if x:
            for j in range(min(len(rb), m - i)):
                out[i + j] += x * rb[j]
    return out


def mul_top_hf(ra, rb, k):
    """Same as ``mul_top`` but with both inputs already highest-first."""
    if not ra or not rb:
        return []
    m = min(k, len(ra) + len(rb) - 1)
    out = [0] * m
    for i in range(min(len(ra), m)):
        x = ra[i]
        if x:
            for j in range(min(len(rb), m - i)):
                out[i + j] += x * rb[j]
    return out


def pow_top(a, n, k):
    """Top ``k`` coefficients of ``a**n`` (highest first), by squaring."""
    result = [1]
    base = a[::-1][:k]
    while n:
        if n & 1:
            result = mul_top_hf(result, base, k)
        n >>= 1
        if n:
            base = mul_top_hf(base, base, k)
    return result


def spread(a, r):
    """P(u) -> P(u**r)."""
    if r == 1 or not a:
        return list(a)
    out = [0] * ((len(a) - 1) * r + 1)
    for i, c in enumerate(a):
        out[i * r] = c
    return out


def power(a, n):
    result = [1]
    base = list(a)
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result

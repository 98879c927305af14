"""Backend selection for the polynomial kernels.

The compiled ``_cpoly`` extension is used when it was built; otherwise the
pure-Python ``_poly`` module.  Setting ``VALCONE_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _poly

if os.environ.get("VALCONE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _poly
    BACKEND = "python"
else:
    try:
        from . import _cpoly as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _poly
        BACKEND = "python"

trim = _impl.trim
add = _impl.add
sub = _impl.sub
scale = _impl.scale
shift = _impl.shift
mul = _impl.mul
content = _impl.content
primitive = _impl.primitive
divexact = _impl.divexact
pseudo_rem = _impl.pseudo_rem
gcd = _impl.gcd
mul_top = _impl.mul_top
mul_top_hf = _impl.mul_top_hf
pow_top = _impl.pow_top
spread = _impl.spread
power = _impl.power


def available_backends():
    """Kernel modules importable in this environment, keyed by name."""
    out = {"python": _poly}
    try:
        from . import _cpoly

        out["cython"] = _cpoly
    except ImportError:
        pass
    return out

"""Compare the compiled and pure-Python polynomial kernels.

Run ``python3 benchmarks/bench_kernels.py``.  Kernel timings use both
backends in one process; the end-to-end workload runs in a subprocess per
backend so that ``VALCONE_PURE_PYTHON`` takes effect at import.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from valcone.kernels import available_backends

END_TO_END = """
import time
from valcone.matrix import FieldMatrix, Representation
from valcone.puiseux import T
from valcone.kernels import BACKEND
from valcone.degeneration import length_function
rep = Representation({"a": [[T + 1, 1], [T, 1]], "b": [[T**2 + 1, T], [T, 1]]})
words = ",".join(" ".join("ab"[(i >> j) & 1] for j in range(6)) for i in range(64))
start = time.perf_counter()
length_function(rep, words)
print(BACKEND, time.perf_counter() - start)
"""


def _poly(rng, deg, bits=40):
    return [int(x) for x in rng.integers(-(2**bits), 2**bits, size=deg + 1)] or [1]


def bench_kernels(number):
    rng = np.random.default_rng(0)
    backends = available_backends()
    a, b, g = _poly(rng, 40), _poly(rng, 40), _poly(rng, 15)
    ga, gb = _poly(rng, 15), _poly(rng, 15)
    ref = backends["python"]
    p, q = ref.mul(g, ga), ref.mul(g, gb)
    cases = {
        "mul deg 40": lambda m: m.mul(a, b),
        "gcd deg 30 (common deg 15)": lambda m: m.gcd(p, q),
        "power deg 5 ^ 8": lambda m: m.power(a[:6], 8),
        "mul_top k=8": lambda m: m.mul_top(a, b, 8),
    }
    rows = []
    for name, fn in cases.items():
        times = {}
        for bname, mod in backends.items():
            times[bname] = min(timeit.repeat(lambda: fn(mod), number=number, repeat=3)) / number
        rows.append((name, times))
    return list(backends), rows


def bench_end_to_end():
    out = {}
    for pure in ("1", "0"):
        env = dict(os.environ, VALCONE_PURE_PYTHON=pure)
        res = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        name, secs = res.stdout.split()
        out[name] = float(secs)
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--number", type=int, default=200, help="calls per timing")
    args = parser.parse_args(argv)
    names, rows = bench_kernels(args.number)
    print(f"{'kernel':30s}" + "".join(f"{n:>14s}" for n in names) + ("    speedup" if "cython" in names else ""))
    for name, times in rows:
        line = f"{name:30s}" + "".join(f"{times[n] * 1e6:12.1f}us" for n in names)
        if "cython" in times:
            line += f"{times['python'] / times['cython']:10.2f}x"
        print(line)
    e2e = bench_end_to_end()
    print()
    print("length_function, 64 words of length 6:")
    for name, secs in e2e.items():
        print(f"  {name:8s}{secs:8.3f}s")


if __name__ == "__main__":
    main()

"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Two workloads: the sparse echelon rank behind every truncated homology
computation (matrices taken from the glued algebra D*(1) u D*(1) at word
bound 6), and dense rank mod p on a random matrix.  Finally the whole
gluing computation is timed end to end in a subprocess under each backend.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from morita import _kernels_py
from morita.cw import glue, inclusion
from morita.dga import D_star, S_star
from morita.gradedcx import _vectors
from morita.kernels import COMPILED

try:
    from morita import _kernels
except ImportError:
    _kernels = None


def glue_workload():
    """Sparse (cols, vals) vectors of the degree-1 boundary of the glued algebra."""
    A0 = S_star()
    f = inclusion(A0, D_star(a="a", b="b"))
    g = inclusion(A0, D_star(a="a", b="b"))
    G = glue(f, g)
    out = []
    for n in (1, 2, 3):
        src = G.basis_words(n, 6)
        dst = G.basis_words(n - 1, 6)
        index = {w: i for i, w in enumerate(dst)}
        vecs = _vectors(src, index, G.word_differential)
        out.append((vecs, len(dst)))
    return out


def _pack(vecs):
    packed = []
    for v in vecs:
        items = sorted(v.items())
        packed.append(([c for c, _ in items], [x for _, x in items]))
    packed.sort(key=lambda cv: len(cv[0]))
    return packed


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = [("python", _kernels_py)]
    if _kernels is not None:
        impls.insert(0, ("compiled", _kernels))
    print(f"compiled extension available: {COMPILED}")

    work = [(_pack(v), n) for v, n in glue_workload()]
    rng = random.Random(0)
    dense = [[rng.randint(-3, 3) for _ in range(120)] for _ in range(120)]

    cases = {
        "sparse_rank Q (glue, L=6)": lambda k: [k.sparse_rank(v, n, 0) for v, n in work],
        "sparse_rank F_7 (glue, L=6)": lambda k: [k.sparse_rank(v, n, 7) for v, n in work],
        "rank_mod_p 120x120": lambda k: k.rank_mod_p(dense, 7),
    }
    print(f"{'workload':32} {'impl':10} {'seconds':>10}  result")
    for name, fn in cases.items():
        base = None
        for label, k in impls:
            secs, res = timed(lambda: fn(k), args.repeat)
            speed = "" if base is None else f"  ({secs / base:.1f}x the compiled time)"
            base = secs if base is None else base
            print(f"{name:32} {label:10} {secs:10.4f}  {res}{speed}")

    script = ("from morita.cw import glue, inclusion\n"
              "from morita.dga import D_star, S_star, algebra_homology\n"
              "A0 = S_star()\n"
              "G = glue(inclusion(A0, D_star()), inclusion(A0, D_star()))\n"
              "print(algebra_homology(G, 3, 6).as_tuple())\n")
    for label, env in (("compiled", {}), ("python", {"MORITA_PURE_PYTHON": "1"})):
        if label == "compiled" and not COMPILED:
            continue
        t = time.perf_counter()
        out = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True,
                             env={**os.environ, **env}, check=True).stdout.strip()
        print(f"{'glue homology, L=6 (end to end)':32} {label:10} "
              f"{time.perf_counter() - t:10.4f}  {out}")


if __name__ == "__main__":
    main()

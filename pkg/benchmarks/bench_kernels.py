"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py --n 4096 --degree 64 --rounds 200
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from twochoices import kernels
from twochoices.synth import random_regular_graph


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench(n: int, degree: int, rounds: int, repeat: int, p: float) -> list[tuple[str, str, float]]:
    g = random_regular_graph(n, degree, seed=1)
    colors = (np.random.default_rng(0).random(n) < 0.5).astype(np.uint8)
    backends = [("python", kernels.python)]
    if kernels.compiled is not None:
        backends.insert(0, ("cython", kernels.compiled))
    rows = []
    for name, mod in backends:
        key = mod.seed_key(3)

        def rounds_loop(mod=mod, key=key):
            a, b = colors.copy(), np.empty_like(colors)
            for r in range(rounds):
                mod.two_choices_round(g.indptr, g.indices, a, b, None, p, 1, key, r)
                a, b = b, a

        rows.append((name, f"{rounds} rounds", _best(rounds_loop, repeat)))
        rows.append((name, "peel", _best(lambda mod=mod: mod.peel(g.indptr, g.indices), repeat)))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=4096)
    ap.add_argument("--degree", type=int, default=64)
    ap.add_argument("--rounds", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--p", type=float, default=0.1)
    args = ap.parse_args(argv)
    rows = bench(args.n, args.degree, args.rounds, args.repeat, args.p)
    print(f"n={args.n} degree={args.degree} active backend={kernels.BACKEND}")
    base = {task: t for name, task, t in rows if name == "python"}
    for name, task, t in rows:
        print(f"{name:>7} {task:>12} {t * 1e3:10.2f} ms  speedup x{base[task] / t:6.1f}")


if __name__ == "__main__":
    main()

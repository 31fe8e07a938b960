"""Compare the numba kernels with their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--size 300] [--repeat 5]

Both paths must return identical arrays; the script asserts that before
reporting timings.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from krallcremona.modular import PRIME_START, eval_monomials_mod_p, rref_mod_p


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=300)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    p = PRIME_START
    a = rng.integers(0, p, size=(args.size, args.size + 5), dtype=np.int64)
    pts = rng.integers(0, p, size=(args.size * 4, 6), dtype=np.int64)
    exps = rng.integers(0, 5, size=(args.size, 6), dtype=np.int64)

    # warm the jit outside the timed region
    rref_mod_p(a[:4, :6], p, use_numba=True)
    eval_monomials_mod_p(pts[:2], exps[:2], p, use_numba=True)

    rows = []
    for name, call in [
        ("rref_mod_p", lambda nb: rref_mod_p(a, p, use_numba=nb)[0]),
        ("eval_monomials_mod_p", lambda nb: eval_monomials_mod_p(pts, exps, p, use_numba=nb)),
    ]:
        t_nb, r_nb = _best(lambda: call(True), args.repeat)
        t_np, r_np = _best(lambda: call(False), args.repeat)
        assert np.array_equal(r_nb, r_np), f"{name}: kernels disagree"
        rows.append((name, t_nb, t_np))
    print(f"{'kernel':<22}{'numba s':>10}{'numpy s':>10}{'ratio':>8}")
    for name, t_nb, t_np in rows:
        print(f"{name:<22}{t_nb:>10.4f}{t_np:>10.4f}{t_np / t_nb:>8.1f}")


if __name__ == "__main__":
    main()

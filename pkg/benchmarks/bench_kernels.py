"""Compare the compiled and pure-Python subset-sum kernels.

    python benchmarks/bench_kernels.py [--n 14] [--batch 200] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from linkih import kernels


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=14)
    parser.add_argument("--batch", type=int, default=200)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    levels = [rng.integers(1, 1000, size=args.n).tolist()]
    vectors = np.sort(rng.integers(1, 1000, size=(args.batch, args.n)), axis=1)

    backends = ["python"] + (["cython"] if kernels.compiled_impl is not None else [])
    ref_signs = kernels.subset_margin_signs(levels, backend="python")
    ref_flags = kernels.short_families(vectors, backend="python")
    print(f"n={args.n} batch={args.batch} (best of {args.repeat})")
    timings = {}
    for name in backends:
        assert np.array_equal(kernels.subset_margin_signs(levels, backend=name), ref_signs)
        flags, generic = kernels.short_families(vectors, backend=name)
        assert np.array_equal(flags, ref_flags[0]) and np.array_equal(generic, ref_flags[1])
        t_sign = best_of(lambda: kernels.subset_margin_signs(levels, backend=name), args.repeat)
        t_fam = best_of(lambda: kernels.short_families(vectors, backend=name), args.repeat)
        timings[name] = (t_sign, t_fam)
        print(f"  {name:7s} margin_signs {t_sign * 1e3:9.2f} ms   short_families {t_fam * 1e3:9.2f} ms")
    if len(timings) == 2:
        (ps, pf), (cs, cf) = timings["python"], timings["cython"]
        print(f"  speedup margin_signs x{ps / cs:.1f}   short_families x{pf / cf:.1f}")
    else:
        print("  compiled backend not built; only the Python kernels ran")


if __name__ == "__main__":
    main()

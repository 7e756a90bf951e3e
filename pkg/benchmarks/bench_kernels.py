"""Compare the numba and numpy kernel paths.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both paths are imported directly, so the env flag does not matter here
(except that with numba disabled only the numpy rows are printed).
"""
import argparse
import time

import numpy as np

from superdiv import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--words", type=int, default=200_000)
    ap.add_argument("--length", type=int, default=8)
    ap.add_argument("--mats", type=int, default=2_000)
    ap.add_argument("--dim", type=int, default=16)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    a = rng.integers(0, 4, size=(args.words, args.length), dtype=np.uint8)
    b = rng.integers(0, 4, size=(args.words, args.length), dtype=np.uint8)
    sa = rng.choice(np.array([-1, 1], dtype=np.int8), args.words)
    sb = rng.choice(np.array([-1, 1], dtype=np.int8), args.words)
    mats = rng.integers(-9, 10, size=(args.mats, args.dim, args.dim))

    cases = [("word products", lambda mul: mul(a, b, sa, sb), "batch_word_mul"),
             ("det nonzero", lambda det: det(mats), "det_nonzero")]
    print(f"backend in use: {_kernels.BACKEND}")
    print(f"{args.words} word pairs of length {args.length}; {args.mats} integer matrices {args.dim}x{args.dim}")
    for label, call, name in cases:
        np_fn = getattr(_kernels, f"{name}_numpy")
        row = {"numpy": best_of(lambda: call(np_fn), args.repeat)}
        if _kernels.HAVE_NUMBA:
            nb_fn = getattr(_kernels, f"{name}_numba")
            call(nb_fn)  # compile
            row["numba"] = best_of(lambda: call(nb_fn), args.repeat)
            x, y = call(np_fn), call(nb_fn)
            if isinstance(x, tuple):
                same = all(np.array_equal(u, v) for u, v in zip(x, y))
            else:
                same = np.array_equal(x, y)
        else:
            same = True
        timings = "  ".join(f"{k} {v * 1e3:8.2f} ms" for k, v in row.items())
        speedup = f"  speedup {row['numpy'] / row['numba']:.1f}x" if "numba" in row else ""
        print(f"{label:<14} {timings}{speedup}  agree={same}")


if __name__ == "__main__":
    main()

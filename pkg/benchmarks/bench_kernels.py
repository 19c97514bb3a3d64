"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--max-dim 14]

Each kernel is timed on random complex inputs; numba timings exclude the
first (compiling) call. Results from both backends are cross-checked.
"""
import argparse
import time

import numpy as np

from gbsim._kernels import numba_backend, numpy_backend


def best_time(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--max-dim", type=int, default=14)
    args = parser.parse_args()
    if numba_backend is None:
        raise SystemExit("numba backend unavailable (not installed or disabled by GBSIM_DISABLE_NUMBA)")
    rng = np.random.default_rng(0)

    cases = []
    for n in range(4, args.max_dim + 1, 2):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        a = np.ascontiguousarray((g + g.T) / 2)
        cases.append(("hafnian_pmp", n, (a,)))
        cases.append(("hafnian_recursive", n, (a,)))
    for n in (8, 12, 16):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        cases.append(("permanent_ryser", n, (np.ascontiguousarray(g),)))
    for n in (16, 64, 128):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        cases.append(("lu_factor", n, (np.ascontiguousarray(g),)))

    print(f"{'kernel':<20}{'n':>4}{'numpy [s]':>14}{'numba [s]':>14}{'speedup':>10}")
    for name, n, inputs in cases:
        fast = getattr(numba_backend, name)
        slow = getattr(numpy_backend, name)
        fast(*inputs)  # compile
        t_np, v_np = best_time(slow, *inputs, repeat=args.repeat)
        t_nb, v_nb = best_time(fast, *inputs, repeat=args.repeat)
        if name != "lu_factor":
            assert abs(v_np - v_nb) <= 1e-8 * max(abs(v_np), 1.0), (name, n, v_np, v_nb)
        print(f"{name:<20}{n:>4}{t_np:>14.6f}{t_nb:>14.6f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()

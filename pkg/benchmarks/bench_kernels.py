"""Time the numba and numpy kernel backends on the oracle's workload.

    python benchmarks/bench_kernels.py [--points 4096 8191] [--k 10] [--repeat 3]

Each backend solves the same tridiagonal problems (the validation Morse
matrix); eigenvalues are checked to agree before timings are printed.
"""

import argparse
import time

import numpy as np

from morsekg import kernels
from morsekg.oracle import GridSpec, assemble


def morse_matrix(points: int):
    def U(x):
        y = x - 5.0
        return -50.0 * (np.exp(-2 * y) - 2 * np.exp(-y))
    return assemble(U, GridSpec(60.0, points))


def best_time(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--points", type=int, nargs="+", default=[1024, 4096, 8191])
    parser.add_argument("--k", type=int, default=10)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = sorted(kernels.IMPLEMENTATIONS)
    print(f"backends: {', '.join(backends)} (active by default: {kernels.BACKEND})")
    print(f"{'points':>7} {'backend':>8} {'eigvals [s]':>12} {'eigvec [s]':>11}")
    for points in args.points:
        diag, off = morse_matrix(points)
        results = {}
        for backend in backends:
            # first call compiles the numba kernels; keep it out of the timing
            lam = kernels.lowest_eigenvalues(diag, off, args.k, backend=backend)
            kernels.inverse_iteration(diag, off, lam[0], backend=backend)
            t_val = best_time(lambda: kernels.lowest_eigenvalues(diag, off, args.k, backend=backend), args.repeat)
            t_vec = best_time(lambda: kernels.inverse_iteration(diag, off, lam[0], backend=backend), args.repeat)
            results[backend] = lam
            print(f"{points:>7} {backend:>8} {t_val:>12.4f} {t_vec:>11.5f}")
        ref = results[backends[0]]
        for backend in backends[1:]:
            gap = np.max(np.abs(results[backend] - ref)) / np.max(np.abs(ref))
            print(f"{'':>7} max relative eigenvalue gap {backends[0]} vs {backend}: {gap:.1e}")


if __name__ == "__main__":
    main()

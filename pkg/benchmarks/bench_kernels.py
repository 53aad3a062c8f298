"""Numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row times one kernel on identical inputs with both implementations
and reports the per-call median and the speedup.
"""
import argparse
import statistics
import time

import numpy as np

from qjsd import _backend, _kernels as k
from qjsd.entanglement import SeparableAnsatz
from qjsd.states import random_density, random_hermitian


def _median_time(fn, repeat):
    fn()  # warm-up (compilation for numba)
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def cases(rng):
    for dim in (2, 4, 6):
        h = random_hermitian(dim, rng)
        yield f"jacobi dim={dim}", lambda h=h: k.jacobi_eigh_loop(h, True), lambda h=h: k.jacobi_eigh_numpy(h, True)
    w = rng.dirichlet(np.ones(6))
    yield "entropy n=6", lambda: k.entropy_bits_loop(w), lambda: k.entropy_bits_numpy(w)
    an = SeparableAnsatz.random(16, 2, 2, rng)
    p = an.params
    yield "ansatz sigma K=16", lambda: k.ansatz_sigma_loop(p, 16, 2, 2), lambda: k.ansatz_sigma_numpy(p, 16, 2, 2)
    rho = random_density(4, rng).matrix
    yield ("objective K=16", lambda: k.ansatz_objective_loop(p, rho, 16, 2, 2, 0.5),
           lambda: k.ansatz_objective_numpy(p, rho, 16, 2, 2, 0.5))
    args = (p, np.ones(p.size), rho, 16, 2, 2, 0.5, 300, 1e-12, 100, -1.0)
    yield "nelder-mead 300 it", lambda: k.nelder_mead_loop(*args), lambda: k.nelder_mead_numpy(*args)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if not _backend.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'numba':>14}{'numpy':>14}{'speedup':>10}")
    for name, fast, slow in cases(rng):
        reps = max(3, args.repeat // 10) if name.startswith("nelder") else args.repeat
        tf, ts = _median_time(fast, reps), _median_time(slow, reps)
        print(f"{name:<22}{tf * 1e6:>12.1f}us{ts * 1e6:>12.1f}us{ts / tf:>9.1f}x")


if __name__ == "__main__":
    main()

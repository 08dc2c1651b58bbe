"""Time the numba and numpy versions of each hot kernel.

    python3 benchmarks/bench_kernels.py [--batch N] [--restarts M] [--repeat R]
"""
import argparse
import statistics
import time

import numpy as np

from ghzlu import _kernels, apply_local_unitaries, haar_random_triple, random_ghz_asd, reconstruct
from ghzlu.oracle import _random_start


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=200_000, help="Schmidt forms per batch kernel call")
    ap.add_argument("--restarts", type=int, default=64, help="polish calls per timing")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    base = [random_ghz_asd(rng) for _ in range(1000)]
    idx = rng.integers(0, len(base), args.batch)
    lam = np.array([base[i].lam for i in idx])
    phi = np.array([base[i].phi for i in idx])

    a = reconstruct(base[0])
    b = apply_local_unitaries(reconstruct(base[1]), haar_random_triple(rng))
    starts = [_random_start(rng) for _ in range(args.restarts)]

    def polish_all(fn):
        def run():
            for s in starts:
                fn(a.amp, b.amp, s.copy(), 400, 1e-15)
        return run

    cases = [
        (f"rho_iota_batch (n={args.batch})", lambda: _kernels.rho_iota_batch_numpy(lam, phi), lambda: _kernels.rho_iota_batch_numba(lam, phi)),
        (f"transform_batch (n={args.batch})", lambda: _kernels.transform_batch_numpy(lam, phi), lambda: _kernels.transform_batch_numba(lam, phi)),
        (f"polish x{args.restarts} (inequivalent pair)", polish_all(_kernels.polish_numpy), polish_all(_kernels.polish_numba)),
    ]

    # compile outside the timed region
    for _, _, fast in cases:
        fast()

    print(f"{'kernel':40s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>8s}")
    for name, slow, fast in cases:
        t_np, _ = best_of(slow, args.repeat)
        t_nb, _ = best_of(fast, args.repeat)
        print(f"{name:40s} {t_np * 1e3:12.2f} {t_nb * 1e3:12.2f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()

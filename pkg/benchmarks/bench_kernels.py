"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Times the two hot kernels on representative inputs and a full (2,2,465)
sweep with each backend patched in.
"""
import argparse
import time

import numpy as np

from starnet import _pykernels, kernels, network
from starnet.bell import vertesi_matrix
from starnet.network import NetworkConfig, sweep
from starnet.settings import vertesi_settings

try:
    from starnet import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = {"python": _pykernels}
    if _kernels is not None:
        backends["cython"] = _kernels
    print(f"default backend: {kernels.BACKEND}")

    rng = np.random.default_rng(0)
    bound_inputs = {k: rng.integers(-2, 3, size=(k, k)).astype(float) for k in (12, 16, 20)}
    M465 = vertesi_matrix(30).entries
    U, W = rng.normal(size=(465, 3)), rng.normal(size=(465, 3))
    cfg = NetworkConfig(2, 2, vertesi_matrix(30), vertesi_settings(30))

    rows = []
    for k, M in bound_inputs.items():
        rows.append((f"classical_bound k={k}", {n: best_of(lambda: b.classical_bound(M), args.repeat)
                                                for n, b in backends.items()}))
    csc = kernels.to_csc(M465)
    rows.append(("column_sums_csc k=465 (x1000)", {
        n: best_of(lambda: [b.column_sums_csc(*csc, U, W) for _ in range(1000)], args.repeat)
        for n, b in backends.items()}))
    rows.append(("column_sums k=465 (x1000)", {
        n: best_of(lambda: [b.column_sums(M465, U, W) for _ in range(1000)], args.repeat)
        for n, b in backends.items()}))

    sweep_times = {}
    for n, b in backends.items():
        original = network.kernels
        network.kernels = b
        try:
            sweep_times[n] = best_of(lambda: sweep(cfg, steps=1001), max(1, args.repeat // 2))
        finally:
            network.kernels = original
    rows.append(("sweep (2,2,465), 1001 points", sweep_times))

    names = list(backends)
    print(f"{'kernel':32s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, t in rows:
        line = f"{label:32s}" + "".join(f"{t[n]:11.4f}s" for n in names)
        if len(names) > 1:
            line += f"{t['python'] / t['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()

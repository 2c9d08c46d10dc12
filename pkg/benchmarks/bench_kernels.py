"""Time the compiled and pure-Python kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from dynfatigue.kernels import available_backends


def workloads():
    rng = np.random.default_rng(0)
    times = np.concatenate(([0.0], np.cumsum(rng.uniform(0.1, 1.0, 20))))
    loads = rng.uniform(0.0, 0.3, times.size) * 100.0
    return {
        "fatigue 20-segment profile, dt=1e-3 min": lambda k: k.simulate_fatigue(times, loads, 100.0, 1.0, 1e-3, 1e-12),
        "fatigue constant 50% MVC to exhaustion": lambda k: k.simulate_fatigue([0.0, 2.0], [50.0, 50.0], 100.0, 1.0, 1e-3, 1e-12),
        "active motor 180 s, dt=0.01 s": lambda k: k.simulate_active_motor(1.0, 0.02, 0.005, 1.0, 180.0, 0.01),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python fallback is available")
    print(f"{'workload':<42} " + " ".join(f"{b:>12}" for b in backends) + "   speedup")
    for name, fn in workloads().items():
        best = {}
        for b, mod in backends.items():
            best[b] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        cols = " ".join(f"{best[b] * 1e3:10.2f}ms" for b in backends)
        speed = f"{best['python'] / best['cython']:8.1f}x" if "cython" in best else ""
        print(f"{name:<42} {cols} {speed}")


if __name__ == "__main__":
    main()

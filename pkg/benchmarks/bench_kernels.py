"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from compdistinct import _backend
from compdistinct.exact import size_cutoff
from compdistinct.sampler import GeometricStream


def best_of(repeat, func):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = func()
        times.append(time.perf_counter() - t0)
    return min(times), result


CASES = {
    "sample_block n=1000 x2000": lambda k: GeometricStream(1).run_kernel(1000, 2000, k)[0].sum(),
    "bitstring_distinct_sum n=18": lambda k: k.bitstring_distinct_sum(18),
    "scaled_dp_expectation n=20000": lambda k: k.scaled_dp_expectation(20000, size_cutoff(20000)),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [_backend.python_kernels]
    if _backend.compiled_kernels is None:
        print("compiled kernels not built; timing the fallback only")
    else:
        backends.append(_backend.compiled_kernels)
    print(f"{'case':34s} " + " ".join(f"{k.BACKEND:>10s}" for k in backends) + "   speedup")
    for name, case in CASES.items():
        timings, results = [], []
        for k in backends:
            t, r = best_of(args.repeat, lambda: case(k))
            timings.append(t)
            results.append(r)
        assert all(np.isclose(r, results[0], rtol=1e-12) for r in results), results
        speedup = f"{timings[0] / timings[-1]:9.1f}x" if len(timings) > 1 else ""
        print(f"{name:34s} " + " ".join(f"{t:9.4f}s" for t in timings) + f" {speedup}")


if __name__ == "__main__":
    main()

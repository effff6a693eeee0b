"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_backends.py --k 100 500 --iters 300

Both backends must produce the same curve; the script aborts if not.
"""

import argparse
import time

import numpy as np

from aeqts import _backend
from aeqts.instance import generate_instance
from aeqts.solver import SolverConfig, run


def time_run(backend, cfg, inst, repeats):
    with _backend.use_backend(backend):
        result = run(cfg, inst)  # warm-up, includes JIT compile for numba
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            run(cfg, inst)
            best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k", type=int, nargs="+", default=[100, 500])
    parser.add_argument("--case", default="I", choices=["I", "II", "III"])
    parser.add_argument("--iters", type=int, default=300)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = [b for b in _backend.BACKENDS if _backend.available(b)]
    print(f"{'k':>6} {'pairs':>5} " + " ".join(f"{b + ' ms/iter':>16}" for b in backends) + "  speedup")
    for k in args.k:
        inst = generate_instance(args.case, k, 1)
        for pairs in (1, 5):
            cfg = SolverConfig(pair_count=pairs, max_iter=args.iters, seed=3)
            timings = {}
            curves = []
            for b in backends:
                seconds, result = time_run(b, cfg, inst, args.repeats)
                timings[b] = seconds / args.iters * 1e3
                curves.append(result.curve)
            if not all(np.array_equal(curves[0], c) for c in curves[1:]):
                raise SystemExit(f"backends disagree at k={k}, pairs={pairs}")
            speed = timings.get("numpy", np.nan) / timings.get("numba", np.nan)
            cols = " ".join(f"{timings[b]:16.3f}" for b in backends)
            print(f"{k:>6} {pairs:>5} {cols}  {speed:6.1f}x")


if __name__ == "__main__":
    main()

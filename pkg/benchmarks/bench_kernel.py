"""Compare the compiled and pure-Python frame optimizers.

Runs the same multistart search on a batch of random two-qubit states with
both backends and reports wall time and the largest disagreement in the
optimum.

    python benchmarks/bench_kernel.py --states 20 --restarts 32
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from qpcc import kernel, states
from qpcc.correlations import OptimizerOptions, total_correlations


def run(backend: str, batch, opts: OptimizerOptions) -> tuple[float, list[float]]:
    opts = OptimizerOptions(restarts=opts.restarts, seed=opts.seed, backend=backend)
    t0 = time.perf_counter()
    values = [total_correlations(s, opts).r_value for s in batch]
    return time.perf_counter() - t0, values


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--states", type=int, default=20)
    ap.add_argument("--restarts", type=int, default=32)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args(argv)

    if "compiled" not in kernel.BACKENDS:
        print("compiled backend not built; run `pip install -e . --no-build-isolation` first", file=sys.stderr)
        return 1

    rng = np.random.default_rng(args.seed)
    batch = [states.random_density(4, rng) for _ in range(args.states)]
    opts = OptimizerOptions(restarts=args.restarts, seed=args.seed)

    t_c, v_c = run("compiled", batch, opts)
    t_p, v_p = run("python", batch, opts)
    diff = max(abs(a - b) for a, b in zip(v_c, v_p))

    print(f"states: {args.states}, starts per state: {args.restarts + 2}")
    print(f"compiled: {t_c:8.3f} s  ({1e3 * t_c / args.states:7.1f} ms/state)")
    print(f"python:   {t_p:8.3f} s  ({1e3 * t_p / args.states:7.1f} ms/state)")
    print(f"speedup:  {t_p / t_c:8.1f}x")
    print(f"max |R_compiled - R_python| = {diff:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Benchmark the compiled simulation kernel against the interpreted fallback.

Runs the same 2 s baseline-config slice on both backends, reports wall time
and speedup, and confirms the trajectories match bit for bit.

Usage: python benchmarks/backend_bench.py [--t-end SECONDS] [--repeat N]
"""

import argparse
import time

import numpy as np

from zblfsim import load_config, run
from zblfsim.sim import kernel_backend


def time_backend(config, backend, repeat):
    best = np.inf
    result = None
    for _ in range(repeat):
        result = run(config, backend=backend)
        best = min(best, result.elapsed)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t-end", type=float, default=2.0)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    config = load_config(overrides=[f"sim.t_end={args.t_end}"])
    steps = config.n_steps * config.substeps
    print(f"baseline config, t_end = {args.t_end} s "
          f"({steps} integration steps, {4 * steps} derivative evaluations)")
    print(f"import-time backend: {kernel_backend()}")

    t_py, res_py = time_backend(config, "python", max(1, args.repeat // 3))
    print(f"python   : {t_py:8.3f} s  ({4 * steps / t_py / 1e3:8.1f} k evals/s)")

    if kernel_backend() == "compiled":
        t_c, res_c = time_backend(config, "compiled", args.repeat)
        print(f"compiled : {t_c:8.3f} s  ({4 * steps / t_c / 1e3:8.1f} k evals/s)")
        print(f"speedup  : {t_py / t_c:8.1f} x")
        identical = np.array_equal(res_py.log.data, res_c.log.data)
        print(f"logs bit-identical across backends: {identical}")
        if not identical:
            raise SystemExit("backend mismatch: trajectories differ")
    else:
        print("compiled : extension not built (pip install -e . rebuilds it)")

    t0 = time.perf_counter()
    full = run(load_config())
    print(f"full 20 s baseline run ({kernel_backend()}): "
          f"{time.perf_counter() - t0:.2f} s wall, status {full.status}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the pure-Python fallback.

Times the raw norm kernels on small vectors (the shapes trees actually
produce), then two end-to-end workloads that are dominated by kernel calls:
the seeded inequality sampler and the brute-force expenditure minimizer.
Also asserts that both backends return bit-identical values on the micro
workload, which is the contract the fallback is held to.

Run:  python benchmarks/bench_backends.py [--samples 2000] [--reps 20000]
"""

import argparse
import time

import numpy as np

from ces_demand import Exponent, flat_tree
from ces_demand import _backend
from ces_demand.oracle import OracleConfig, minimize_expenditure_bruteforce, sample_inequalities


def timeit(fn, reps):
    start = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - start) / reps


def micro_cases(rng):
    cases = []
    for n in (2, 4, 8, 64):
        x = np.exp(rng.uniform(-2.0, 2.0, n))
        theta = rng.dirichlet(np.ones(n))
        cases.append((f"norm_finite      n={n:<3}", "norm_finite", (x, -2.5)))
        cases.append((f"weighted_finite  n={n:<3}", "norm_weighted_finite", (x, theta, 0.5)))
        cases.append((f"cobb_douglas     n={n:<3}", "norm_cobb_douglas", (x, theta)))
        cases.append((f"log_norm_finite  n={n:<3}", "log_norm_finite", (np.log(x), -2.5)))
        cases.append((f"dot              n={n:<3}", "dot", (x, x)))
    return cases


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=20_000, help="micro-bench repetitions")
    parser.add_argument("--samples", type=int, default=2_000, help="inequality samples")
    args = parser.parse_args()

    backends = _backend.available_backends()
    print(f"available backends: {', '.join(backends)}")
    if "compiled" not in backends:
        print("compiled extension not built; timing the pure backend only\n")

    rng = np.random.default_rng(123)
    cases = micro_cases(rng)

    print(f"\nkernel micro-benchmarks ({args.reps} reps each, ns/call)")
    header = f"{'kernel':<24}" + "".join(f"{b:>12}" for b in backends)
    print(header + ("     speedup" if len(backends) == 2 else ""))
    mismatches = 0
    for label, name, call_args in cases:
        times = {}
        values = {}
        for b in backends:
            kern = getattr(_backend.load_backend(b), name)
            times[b] = timeit(lambda: kern(*call_args), args.reps) * 1e9
            values[b] = kern(*call_args)
        row = f"{label:<24}" + "".join(f"{times[b]:>12.0f}" for b in backends)
        if len(backends) == 2:
            row += f"{times['python'] / times['compiled']:>11.1f}x"
            if values["python"] != values["compiled"]:
                mismatches += 1
                row += "  MISMATCH"
        print(row)

    cfg = OracleConfig(seed=42, n_samples=args.samples)
    tree = flat_tree(Exponent.finite(0.5), 6)
    prices = np.array([1.0, 4.0, 2.0, 0.5, 3.0, 1.5])
    search_cfg = OracleConfig(seed=42, n_samples=512)

    print(f"\nend-to-end workloads (wall seconds)")
    macro = {}
    for b in backends:
        with _backend.use_backend(b):
            t0 = time.perf_counter()
            report = sample_inequalities(cfg)
            t_ineq = time.perf_counter() - t0
            t0 = time.perf_counter()
            _, cost = minimize_expenditure_bruteforce(tree, 1.0, prices, search_cfg)
            t_min = time.perf_counter() - t0
        macro[b] = (t_ineq, t_min)
        print(
            f"  {b:<9} inequality sampler ({args.samples} samples x 4): {t_ineq:7.3f}s"
            f"   minimizer: {t_min:6.3f}s"
            f"   (violations={report.n_violations}, cost={cost:.6f})"
        )
    if len(backends) == 2:
        print(
            f"  speedup   inequality sampler: "
            f"{macro['python'][0] / macro['compiled'][0]:.1f}x"
            f"   minimizer: {macro['python'][1] / macro['compiled'][1]:.1f}x"
        )

    if len(backends) == 2:
        print(f"\nbit-identical micro results: {'yes' if mismatches == 0 else 'NO'}")
        if mismatches:
            raise SystemExit(1)


if __name__ == "__main__":
    main()

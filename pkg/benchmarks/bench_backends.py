"""Timing comparison: compiled extension vs pure-numpy fallback.

Runs each hot kernel at study-scale sizes, then one full harness
replication per backend.  Usage:

    python benchmarks/bench_backends.py [--repeat 5]

The backend is frozen per process, so the end-to-end comparison re-invokes
this script in a subprocess with FACTORKDE_BACKEND=python.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_kernels(repeat):
    from factorkde import _purepy

    try:
        from factorkde import _fastcore
    except ImportError:
        print("compiled extension unavailable; nothing to compare")
        return

    rng = np.random.default_rng(0)
    z1, z2 = rng.normal(size=(2, 2000))
    zu, zv = rng.normal(size=(2, 2000))
    x = rng.normal(size=500)
    centers = rng.normal(size=2000)
    data = rng.uniform(size=(1000, 5))
    pts = rng.uniform(size=(2000, 5))
    bw = np.full(5, 0.14)
    w = rng.uniform(0.01, 0.99, size=100000)
    v = rng.uniform(0.01, 0.99, size=100000)

    cases = [
        ("quartic_design (500x2000)",
         lambda m: m.quartic_design(x, centers, 0.4)),
        ("pair_eval_points (2000 pts, n=2000)",
         lambda m: m.pair_eval_points(z1, z2, zu, zv, 0.4, 0.4)),
        ("naive_product_sum (2000 pts, n=1000, k=5)",
         lambda m: m.naive_product_sum(data, pts, bw)),
        ("gumbel_hinv (100k, theta=1.4)",
         lambda m: m.gumbel_hinv(w, v, 1.4, 1e-12, 200)),
    ]
    print(f"{'kernel':45s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, call in cases:
        t_py = best_of(repeat, call, _purepy)
        t_c = best_of(repeat, call, _fastcore)
        print(f"{name:45s} {t_py * 1e3:9.1f}ms {t_c * 1e3:9.1f}ms "
              f"{t_py / t_c:7.2f}x")


def bench_replication():
    from factorkde import backend_name
    from factorkde.harness import ExperimentConfig, run_replication

    for d in (20, 100):
        cfg = ExperimentConfig(family="gumbel", theta=1.4, n=500, d=d, k=5,
                               reps=1, seed0=1)
        run_replication(cfg, 0)  # warm-up
        t0 = time.perf_counter()
        for i in range(3):
            run_replication(cfg, i)
        per_rep = (time.perf_counter() - t0) / 3
        print(f"full replication (n=500, d={d}, k=5) [{backend_name()}]: "
              f"{per_rep * 1e3:.0f}ms")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--replication-only", action="store_true")
    args = parser.parse_args()

    if args.replication_only:
        bench_replication()
        return

    bench_kernels(args.repeat)
    bench_replication()
    env = dict(os.environ, FACTORKDE_BACKEND="python")
    subprocess.run([sys.executable, __file__, "--replication-only"],
                   env=env, check=False)


if __name__ == "__main__":
    main()

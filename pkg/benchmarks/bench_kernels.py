"""Time the compiled and pure-Python resolution kernels on random instances.

    python3 benchmarks/bench_kernels.py --sizes 10,100,1000 --repeat 5
"""

from __future__ import annotations

import argparse
import random
import timeit

from eventeval import _backend


def make_instance(rng: random.Random, m: int, n: int, spacing: int = 40):
    length = max(m * spacing, n * 2, 10)
    events = sorted(rng.sample(range(1, length + 1), m))
    detections = sorted(rng.sample(range(1, length + 1), n))
    return events, detections


def bench(kernels, instances, k: float, rule: int, repeat: int) -> float:
    def run():
        for ev, det in instances:
            kernels.resolve(ev, det, k, rule)

    # best of `repeat`, per instance, in microseconds
    return min(timeit.repeat(run, number=1, repeat=repeat)) / len(instances) * 1e6


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10,100,1000", help="comma-separated event counts m (n = 3m)")
    ap.add_argument("--instances", type=int, default=200)
    ap.add_argument("--k", type=float, default=15.0)
    ap.add_argument("--rule", choices=("optimal", "greedy", "strict"), default="optimal")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _backend.compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    rule = getattr(_backend, f"RULE_{args.rule.upper()}")
    rng = random.Random(args.seed)
    print(f"{'m':>6} {'n':>6} {'python us':>12} {'cython us':>12} {'speedup':>8}")
    for m in (int(s) for s in args.sizes.split(",")):
        count = max(1, args.instances * 10 // max(m, 10))
        instances = [make_instance(rng, m, 3 * m) for _ in range(count)]
        for ev, det in instances:
            assert _backend.pure.resolve(ev, det, args.k, rule) == _backend.compiled.resolve(ev, det, args.k, rule)
        py = bench(_backend.pure, instances, args.k, rule, args.repeat)
        cy = bench(_backend.compiled, instances, args.k, rule, args.repeat)
        print(f"{m:>6} {3 * m:>6} {py:>12.1f} {cy:>12.1f} {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()

"""Compare the compiled and pure-Python kernels on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import sys
import timeit

from bramblekit import _pure
from bramblekit.generators import gen_random_digraph

try:
    from bramblekit import _speedups
except ImportError:
    _speedups = None


def flow_case(n, p, seed):
    D = gen_random_digraph(n, p, seed)
    tails, heads, caps = [], [], []
    for v in range(n):
        tails.append(2 * v)
        heads.append(2 * v + 1)
        caps.append(1)
    for u, v in D.edges:
        tails.append(2 * u + 1)
        heads.append(2 * v)
        caps.append(n)
    rng = random.Random(seed)
    src, snk = 2 * n, 2 * n + 1
    for a in rng.sample(range(n), n // 4):
        tails.append(src)
        heads.append(2 * a)
        caps.append(n)
    for b in rng.sample(range(n), n // 4):
        tails.append(2 * b + 1)
        heads.append(snk)
        caps.append(n)
    return (2 * n + 2, tails, heads, caps, src, snk)


def ddp_case(n, p, seed, k=3, budget=1, cap=200_000):
    D = gen_random_digraph(n, p, seed)
    terms = random.Random(seed).sample(range(n), 2 * k)
    out_ptr, out_idx, in_ptr, in_idx = D.csr()
    return (n, out_ptr, out_idx, in_ptr, in_idx, terms[:k], terms[k:], budget, cap)


def bench(label, fn, args, repeat):
    best = min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))
    return label, best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _speedups is None:
        print("compiled extension not built; only the pure backend is available", file=sys.stderr)
    sys.setrecursionlimit(100_000)

    cases = [
        ("max_flow n=200 p=0.05", "max_flow", flow_case(200, 0.05, 1)),
        ("max_flow n=1000 p=0.01", "max_flow", flow_case(1000, 0.01, 2)),
        # seeds chosen so the search explores ~1.8e5 nodes before proving infeasibility
        ("ddp_search n=20 k=3 c=1", "ddp_search", ddp_case(20, 0.25, 99)),
        ("ddp_search n=30 k=4 c=1", "ddp_search", ddp_case(30, 0.15, 41, k=4)),
        ("ddp_search n=30 k=4 capped", "ddp_search", ddp_case(30, 0.15, 297, k=4)),
    ]
    print(f"{'case':<28}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for label, name, case in cases:
        pure = bench(label, getattr(_pure, name), case, args.repeat)[1]
        if _speedups is not None:
            a, b = getattr(_pure, name)(*case), getattr(_speedups, name)(*case)
            assert a == b, f"backends disagree on {label}"
            fast = bench(label, getattr(_speedups, name), case, args.repeat)[1]
            print(f"{label:<28}{pure * 1e3:>14.2f}{fast * 1e3:>14.2f}{pure / fast:>9.1f}x")
        else:
            print(f"{label:<28}{pure * 1e3:>14.2f}{'-':>14}{'-':>10}")


if __name__ == "__main__":
    main()

"""Closure throughput: compiled kernel, pure-Python kernel, generic closure.

    python benchmarks/bench_closure.py [--sizes 8 16 32 64] [--repeat 5] [--seed 0]

Each row times the closure of one random integer zone matrix of the given
size.  The generic column runs the basis-level Floyd-Warshall over interval
elements, which is what non-interval bases always use.
"""

from __future__ import annotations

import argparse
import random
import timeit

from weakrel import kernel
from weakrel import weakrel as wr
from weakrel.bases import Interval, IntervalBasis
from weakrel.scalar import NEG_INF


def random_bounds(n: int, rng: random.Random, density: float = 0.4) -> list:
    ub = [None] * (n * n)
    for i in range(n):
        ub[i * n + i] = 0
        for j in range(n):
            if i != j and rng.random() < density:
                ub[i * n + j] = rng.randint(0, 50)
    return ub


def as_matrix(ub: list, n: int) -> wr.ConstraintMatrix:
    b = IntervalBasis()
    cells = {}
    for i in range(n):
        for j in range(n):
            if i != j and ub[i * n + j] is not None:
                cells[(i, j)] = Interval(NEG_INF, ub[i * n + j])
    return wr.from_cells(b, n, cells)


def bench(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)

    print(f"compiled kernel available: {kernel.have_native()}")
    print(f"{'n':>4} {'native ms':>10} {'python ms':>10} {'generic ms':>11} {'speedup':>8}")
    for n in args.sizes:
        ub = random_bounds(n, rng)
        m = as_matrix(ub, n)
        expected = kernel.floyd_warshall_python(ub, n)
        t_py = bench(lambda: kernel.floyd_warshall_python(ub, n), args.repeat)
        t_gen = bench(lambda: wr.close_full(m), args.repeat)
        if kernel.have_native():
            assert kernel.floyd_warshall_native(ub, n) == expected
            t_nat = bench(lambda: kernel.floyd_warshall_native(ub, n), args.repeat)
            nat, speed = f"{t_nat * 1e3:10.3f}", f"{t_py / t_nat:7.1f}x"
        else:
            nat, speed = f"{'-':>10}", f"{'-':>8}"
        print(f"{n:>4} {nat} {t_py * 1e3:10.3f} {t_gen * 1e3:11.3f} {speed}")


if __name__ == "__main__":
    main()

"""Benchmark the pure-Python term kernel against the compiled one.

Runs the hot kernel operations over a generated formula corpus and prints
microseconds per call for each backend, plus the speedup.  Usage:

    python3 benchmarks/bench_kernel.py [--count 2000] [--repeat 5]
"""

from __future__ import annotations

import argparse
import random
import timeit

from mucut import _kernel_py

try:
    from mucut import _kernel_c
except ImportError:  # pragma: no cover - compiled backend is optional
    _kernel_c = None


def _grow(rng, size_budget, level_budget, bound):
    if size_budget <= 1:
        if bound and rng.random() < 0.3:
            return ("var",)
        n = rng.randrange(4)
        return ("atom", n) if rng.random() < 0.5 else ("natom", n)
    roll = rng.random()
    if level_budget > 0 and roll < 0.2:
        body = _grow(rng, size_budget - 1, level_budget - 1, True)
        return ("mu" if rng.random() < 0.5 else "nu", body)
    if roll < 0.4:
        body = _grow(rng, size_budget - 1, level_budget, bound)
        return ("box" if rng.random() < 0.5 else "dia", body)
    left = _grow(rng, (size_budget - 1) // 2, level_budget, bound)
    right = _grow(rng, (size_budget - 1) // 2, level_budget, bound)
    return ("and" if rng.random() < 0.5 else "or", left, right)


def corpus(count, seed=7):
    rng = random.Random(seed)
    return tuple(_grow(rng, rng.randrange(8, 31), 3, False) for _ in range(count))


def operations(kernel, forms):
    top = kernel.TOP
    return {
        "negate": lambda: [kernel.negate(f) for f in forms],
        "prime": lambda: [kernel.prime(f) for f in forms],
        "level": lambda: [kernel.level(f) for f in forms],
        "size": lambda: [kernel.size(f) for f in forms],
        "sort_key": lambda: [kernel.sort_key(f) for f in forms],
        "substitute": lambda: [kernel.substitute(("or", f, ("var",)), top) for f in forms],
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=2000,
                        help="formulas in the corpus (default 2000)")
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions, best taken (default 5)")
    args = parser.parse_args()

    forms = corpus(args.count)
    backends = [("python", _kernel_py)]
    if _kernel_c is not None:
        backends.append(("compiled", _kernel_c))
    else:
        print("compiled backend unavailable; timing the pure kernel only")

    results = {}
    for name, kernel in backends:
        for op, fn in operations(kernel, forms).items():
            best = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            results[(name, op)] = best / args.count * 1e6

    ops = list(operations(_kernel_py, forms))
    header = "%-12s %12s %12s %10s" % ("operation", "python us", "compiled us", "speedup")
    print(header)
    print("-" * len(header))
    for op in ops:
        py = results[("python", op)]
        if ("compiled", op) in results:
            c = results[("compiled", op)]
            print("%-12s %12.3f %12.3f %9.2fx" % (op, py, c, py / c))
        else:
            print("%-12s %12.3f %12s %10s" % (op, py, "-", "-"))


if __name__ == "__main__":
    main()

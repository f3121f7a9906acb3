"""Benchmark the compiled scan kernel against the pure numpy lane.

Builds the canonical team bank used by the exhaustive equivalence sweep and
times the two hot primitives on it: pairwise conflict-word computation and
the early-exit masked counterexample scan.  The enumeration itself is shared
by both lanes, so it is reported once as a setup cost.

Usage: python3 benchmarks/bench_kernel.py [--max-values N] [--repeat R]
"""

import argparse
import time

import numpy as np

from exclusion import _kernel_py

try:
    from exclusion import _kernel as _compiled
except ImportError:
    _compiled = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def report(name, pure, compiled):
    if compiled is None:
        print(f"{name:<34} python {pure * 1000:9.2f} ms   cython       n/a")
    else:
        ratio = pure / compiled if compiled > 0 else float("inf")
        print(
            f"{name:<34} python {pure * 1000:9.2f} ms   "
            f"cython {compiled * 1000:9.2f} ms   x{ratio:.1f}"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--max-values",
        type=int,
        default=12,
        help="value bound for the 3-variable bank (default 12, the full sweep bank)",
    )
    parser.add_argument(
        "--repeat", type=int, default=5, help="repetitions per measurement (default 5)"
    )
    args = parser.parse_args()

    start = time.perf_counter()
    cells, n_rows, n_values = _kernel_py.enumerate_packed(3, 4, args.max_values)
    print(
        f"bank: {len(cells)} canonical teams (3 vars, <=4 rows, "
        f"<={args.max_values} values) enumerated in "
        f"{time.perf_counter() - start:.1f} s"
    )
    if _compiled is None:
        print("compiled lane not importable; timing the pure lane only")
    print()

    col_choices = [
        ("conflict words, unary pair", (0,), (1,)),
        ("conflict words, binary pair", (0, 1), (1, 2)),
    ]
    for name, left, right in col_choices:
        left_a = np.asarray(left, dtype=np.int64)
        right_a = np.asarray(right, dtype=np.int64)
        pure = best_of(
            lambda: _kernel_py.conflict_words(cells, n_rows, 3, left_a, right_a),
            args.repeat,
        )
        compiled = None
        if _compiled is not None:
            compiled = best_of(
                lambda: _compiled.conflict_words(cells, n_rows, 3, left_a, right_a),
                args.repeat,
            )
            same = np.array_equal(
                _kernel_py.conflict_words(cells, n_rows, 3, left_a, right_a),
                np.asarray(_compiled.conflict_words(cells, n_rows, 3, left_a, right_a)),
            )
            if not same:
                raise SystemExit("lane outputs disagree; benchmark aborted")
        report(name, pure, compiled)

    n_words = (len(cells) + 63) // 64
    ones = np.full(n_words, np.uint64(0xFFFFFFFFFFFFFFFF))
    zeros = np.zeros(n_words, dtype=np.uint64)
    scans = [
        # goal mask all ones: no team qualifies, the scan must visit every word
        ("masked scan, full pass (no hit)", (ones, ones, ones, ones, ones)),
        # goal mask all zeros: the very first word already hits
        ("masked scan, early exit", (ones, ones, zeros, ones, ones)),
    ]
    scan_repeat = max(args.repeat, 50)
    for name, masks in scans:
        pure = best_of(lambda: _kernel_py.any_counterexample(*masks), scan_repeat)
        compiled = None
        if _compiled is not None:
            compiled = best_of(lambda: _compiled.any_counterexample(*masks), scan_repeat)
            if bool(_kernel_py.any_counterexample(*masks)) != bool(
                _compiled.any_counterexample(*masks)
            ):
                raise SystemExit("lane outputs disagree; benchmark aborted")
        report(name, pure, compiled)


if __name__ == "__main__":
    main()

"""Row-reduction backend comparison.

Runs the same exact-rational RREF workload against the compiled kernel
and the pure-Python twin, checks they produce identical output, and
prints the timing ratio.

    python3 benchmarks/bench_linalg.py [--size N] [--repeats K]
"""

import argparse
import random
import time
from fractions import Fraction

from mhopf.linalg import _rref_py

try:
    from mhopf.linalg import _rref_cy
except ImportError:
    _rref_cy = None


def random_matrix(rng, rows, cols, max_num=30, max_den=7):
    return [
        [Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
         for _ in range(cols)]
        for _ in range(rows)
    ]


def to_pairs(rows):
    return ([[f.numerator for f in r] for r in rows],
            [[f.denominator for f in r] for r in rows])


def run_backend(kernel, mats):
    out = []
    started = time.perf_counter()
    for num, den in mats:
        out.append(kernel.rref_pairs([r[:] for r in num], [r[:] for r in den]))
    return time.perf_counter() - started, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=40,
                        help="square matrix dimension (default 40)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="matrices per backend (default 5)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    mats = [to_pairs(random_matrix(rng, args.size, args.size))
            for _ in range(args.repeats)]

    t_py, out_py = run_backend(_rref_py, mats)
    print(f"python  backend: {t_py:.4f}s "
          f"({args.repeats} x {args.size}x{args.size} exact RREF)")

    if _rref_cy is None:
        print("cython  backend: not built (pip install -e . compiles it)")
        return

    t_cy, out_cy = run_backend(_rref_cy, mats)
    print(f"cython  backend: {t_cy:.4f}s")

    if out_py != out_cy:
        raise SystemExit("backend outputs differ; this is a bug")
    print(f"outputs identical; speedup x{t_py / t_cy:.2f}")


if __name__ == "__main__":
    main()

"""Time the compiled and NumPy counting kernels on the (4, 29) fixture.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import importlib
import sys
import time
from pathlib import Path

import numpy as np

from sccode import _kernels_py
from sccode.cycles import enumerate_candidates
from sccode.io import read_matrix

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"


def load_backends():
    backends = {"numpy": _kernels_py}
    try:
        backends["cython"] = importlib.import_module("sccode._kernels")
    except ImportError:
        print("compiled extension not built; timing the NumPy backend only", file=sys.stderr)
    return backends


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    P = read_matrix(DATA / "gd_4_29_partition.csv")
    L = read_matrix(DATA / "gd_4_29_lifting.csv")
    cands = enumerate_candidates(4, 29, 4)
    rng = np.random.default_rng(0)
    rest = rng.integers(-20, 20, 200_000)
    coef = rng.choice([-2, -1, 1, 2], 200_000)
    weights = rng.integers(1, 40, 200_000)
    values = np.arange(5)

    jobs = {
        "signed_sums": lambda k: k.signed_sums(P, cands.rows, cands.cols),
        "walk_profile": lambda k: k.walk_profile(P, L, cands.rows[:200_000], cands.cols[:200_000], 29),
        "value_hits": lambda k: k.value_hits(rest, coef, weights, values),
        "modular_hits": lambda k: k.modular_hits(rest, coef, weights, 29),
    }
    backends = load_backends()
    print(f"{'kernel':<14}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, job in jobs.items():
        row, outs = [], []
        for kernel in backends.values():
            t, out = best_of(lambda: job(kernel), args.repeat)
            row.append(t)
            outs.append(out)
        for other in outs[1:]:
            a, b = (outs[0], other) if isinstance(other, tuple) else ((outs[0],), (other,))
            assert all(np.array_equal(x, y) for x, y in zip(a, b)), f"{name}: backends disagree"
        speed = f"{row[0] / row[1]:>9.1f}x" if len(row) > 1 else ""
        print(f"{name:<14}" + "".join(f"{t * 1e3:>10.1f}ms" for t in row) + speed)


if __name__ == "__main__":
    main()

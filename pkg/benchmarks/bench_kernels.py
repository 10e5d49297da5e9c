"""Time the compiled kernels against the pure-Python reference.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one row per kernel and workload with the best time of each backend and the speedup.
"""
import argparse
import time

import numpy as np

from parorb import _pykernels as py
from parorb.corpus import corpus_groups
from parorb.finitegroup import symmetric_group

try:
    from parorb import _ckernels as cy
except ImportError:
    cy = None


def best(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def workloads(rng):
    for name, G in [("S4", corpus_groups()["S4"]), ("S5", symmetric_group(5))]:
        yield "perm_mul_table", name, (np.array(G.descriptors, dtype=np.int64),)

    for na, nh in [(7, 3), (31, 5)]:
        a_add = np.add.outer(np.arange(na), np.arange(na)) % na
        h_mul = np.add.outer(np.arange(nh), np.arange(nh)) % nh
        act = np.array([[(a * pow(2, h, na)) % na for a in range(na)] for h in range(nh)], dtype=np.int64)
        yield "semidirect_mul_table", f"Z{na}:Z{nh}", (a_add, act, h_mul)

    G = symmetric_group(5)
    order, parent, via = G.bfs_tree
    ngen = len(G.generators)
    for dim, level in [(4, 12), (24, 60)]:
        gp = np.array([rng.permutation(dim) for _ in range(ngen)], dtype=np.int64)
        gt = rng.integers(0, level, size=(ngen, dim), dtype=np.int64)
        args = (order, parent, via, gp, gt, level)
        yield "expand_monomial", f"S5 dim {dim}", args
        perm, twist = py.expand_monomial(*args)
        yield "monomial_traces", f"S5 dim {dim}", (perm, twist, level)

    n = 120
    for d1, d2 in [(4, 5), (12, 12)]:
        p1 = np.array([rng.permutation(d1) for _ in range(n)], dtype=np.int64)
        p2 = np.array([rng.permutation(d2) for _ in range(n)], dtype=np.int64)
        t1 = rng.integers(0, 12, size=(n, d1), dtype=np.int64)
        t2 = rng.integers(0, 12, size=(n, d2), dtype=np.int64)
        yield "kron_monomial", f"{d1}x{d2}, 120 elts", (p1, t1, p2, t2, 12)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if cy is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation` first")

    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'workload':<20}{'python (ms)':>12}{'cython (ms)':>13}{'speedup':>10}")
    for kernel, label, data in workloads(rng):
        tp = best(getattr(py, kernel), data, args.repeat)
        tc = best(getattr(cy, kernel), data, args.repeat)
        print(f"{kernel:<22}{label:<20}{tp * 1e3:>12.3f}{tc * 1e3:>13.3f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()

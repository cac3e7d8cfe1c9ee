"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload runs under both backends (switched with kernels.use_backend) and
the results are checked for equality before timings are reported.
"""

import argparse
import json
import random
import time

from hookdet import kernels
from hookdet.blockhook import BlockFamily, block_hook_matrix, random_assignment
from hookdet.lgv import build_gamma_Nm, enumerate_vd_systems
from hookdet.matrix import det_eval_bareiss, det_subset_dp


def workloads():
    A33 = block_hook_matrix(BlockFamily.A, 3, 3)
    G33 = block_hook_matrix(BlockFamily.G, 3, 3)
    det = det_subset_dp(A33)
    rng = random.Random(0)
    sigmas = [random_assignment(A33.variables(), rng) for _ in range(20)]
    gamma = build_gamma_Nm(3, 3)
    p = det_subset_dp(block_hook_matrix(BlockFamily.A, 2, 2))
    return {
        "subset_dp A(3,3)": lambda: det_subset_dp(A33),
        "subset_dp G(3,3)": lambda: det_subset_dp(G33),
        "poly mul (det A(2,2))^3": lambda: p * p * p,
        "eval det A(3,3) x20": lambda: [det.eval(s) for s in sigmas],
        "bareiss A(3,3) x20": lambda: [det_eval_bareiss(A33, s) for s in sigmas],
        "vd systems Gamma(3,3)": lambda: len(enumerate_vd_systems(gamma)),
    }


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    backends = kernels.available_backends()
    start = kernels.BACKEND
    rows = []
    for name, fn in workloads().items():
        row = {"workload": name}
        results = {}
        for b in backends:
            kernels.use_backend(b)
            row[b], results[b] = best_of(fn, args.repeat)
        kernels.use_backend(start)
        vals = list(results.values())
        row["agree"] = all(v == vals[0] for v in vals)
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    if "cython" not in backends:
        print("compiled extension not built; python backend only")
    print(f"{'workload':28} {'python s':>10} {'cython s':>10} {'speedup':>8}  agree")
    for r in rows:
        cy = f"{r['cython']:10.4f}" if "cython" in r else f"{'-':>10}"
        sp = f"{r['speedup']:7.1f}x" if "speedup" in r else f"{'-':>8}"
        print(f"{r['workload']:28} {r['python']:10.4f} {cy} {sp}  {r['agree']}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Compare the numba oracle kernels against their pure-Python/numpy twins.

Runs both implementations of the DFS and subset-DP kernels over generated
corpus instances and the shipped fixtures, then prints per-size timings and
speedups.  The numba kernels are the ones the package uses by default; the
fallbacks are what you get with HAMDUAL_NO_NUMBA=1.

    python benchmarks/bench_kernels.py [--samples N] [--max-n N]
"""

import argparse
import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from hamdual import _kernels
from hamdual.formats import parse_rotation_text
from hamdual.oracle import generate_corpus


def time_call(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_instance(label, adj):
    n = len(adj)
    indptr, indices = _kernels.csr_from_adjacency(adj)

    t_nb_dfs, r_nb = time_call(_kernels._dfs_njit, indptr, indices, n)
    t_py_dfs, r_py = time_call(_kernels._dfs_python, adj, n)
    assert bool(r_nb[0]) == r_py[0]

    row = {
        "label": label,
        "n": n,
        "dfs_numba_ms": t_nb_dfs * 1e3,
        "dfs_python_ms": t_py_dfs * 1e3,
    }
    if n <= 24:
        t_nb_dp, d_nb = time_call(_kernels._dp_njit, indptr, indices, n)
        t_np_dp, d_np = time_call(_kernels._dp_numpy, adj, n)
        assert bool(d_nb[0]) == d_np[0]
        row["dp_numba_ms"] = t_nb_dp * 1e3
        row["dp_numpy_ms"] = t_np_dp * 1e3
    return row


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=12)
    parser.add_argument("--max-n", type=int, default=16)
    args = parser.parse_args()

    if not _kernels.NUMBA_ENABLED:
        print("numba backend unavailable (HAMDUAL_NO_NUMBA set or numba missing); "
              "nothing to compare")
        return 1

    instances = []
    for i, emb in enumerate(generate_corpus(args.max_n, seed=7, samples=args.samples)):
        instances.append((f"corpus[{i}] n={emb.n}", emb.adjacency()))
    for name in ("theta14", "bbl38", "tutte46"):
        emb = parse_rotation_text((ROOT / "fixtures" / f"{name}.rot").read_text())
        instances.append((name, emb.adjacency()))

    # Warm the JIT so compile time is not measured.
    warm = instances[0][1]
    ip, ix = _kernels.csr_from_adjacency(warm)
    _kernels._dfs_njit(ip, ix, len(warm))
    _kernels._dp_njit(ip, ix, len(warm))

    print(f"{'instance':<22} {'n':>4} {'dfs numba':>11} {'dfs python':>11} "
          f"{'speedup':>8} {'dp numba':>11} {'dp numpy':>11} {'speedup':>8}")
    for label, adj in instances:
        row = bench_instance(label, adj)
        dfs_speed = row["dfs_python_ms"] / row["dfs_numba_ms"]
        line = (f"{row['label']:<22} {row['n']:>4} "
                f"{row['dfs_numba_ms']:>9.3f}ms {row['dfs_python_ms']:>9.3f}ms "
                f"{dfs_speed:>7.1f}x")
        if "dp_numba_ms" in row:
            dp_speed = row["dp_numpy_ms"] / row["dp_numba_ms"]
            line += (f" {row['dp_numba_ms']:>9.3f}ms {row['dp_numpy_ms']:>9.3f}ms "
                     f"{dp_speed:>7.1f}x")
        else:
            line += f" {'-':>11} {'-':>11} {'-':>8}"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())

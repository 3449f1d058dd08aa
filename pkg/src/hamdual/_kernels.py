"""Hot oracle kernels: pruned path DFS and bitmask subset DP.

Both kernels exist twice: a tight-loop version compiled with numba's
``@njit`` and a pure numpy/Python fallback.  The fallback is selected at
import time when numba is unavailable or the environment variable
``HAMDUAL_NO_NUMBA`` is set to 1/true/yes; ``BACKEND`` reports the choice.
``benchmarks/bench_kernels.py`` times one against the other.

Graphs arrive as CSR arrays (indptr, indices).  The DFS starts at vertex 0
and prunes a branch when some unvisited vertex has fewer than two
neighbours left to route through, or when the unvisited region plus the
start vertex is no longer reachable from the head.  The DP fills, for
every vertex subset containing 0, the bitmask of reachable path endpoints.
"""

import os

import numpy as np


def _flag_set(name):
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes"}


try:
    if _flag_set("HAMDUAL_NO_NUMBA"):
        raise ImportError("numba disabled by HAMDUAL_NO_NUMBA")
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:
    njit = None
    NUMBA_ENABLED = False

BACKEND = "numba" if NUMBA_ENABLED else "python"


def csr_from_adjacency(adj):
    """Flatten neighbour lists into (indptr, indices) int32 arrays."""
    indptr = np.zeros(len(adj) + 1, dtype=np.int32)
    for v, nbrs in enumerate(adj):
        indptr[v + 1] = indptr[v] + len(nbrs)
    indices = np.empty(int(indptr[-1]), dtype=np.int32)
    pos = 0
    for nbrs in adj:
        for w in nbrs:
            indices[pos] = w
            pos += 1
    return indptr, indices


# --- DFS kernel ---------------------------------------------------------------


def _dfs_csr(indptr, indices, n):
    path = np.zeros(n, dtype=np.int32)
    choice = np.zeros(n, dtype=np.int32)
    on_path = np.zeros(n, dtype=np.uint8)
    seen = np.zeros(n, dtype=np.uint8)
    stack = np.zeros(n, dtype=np.int32)
    witness = np.zeros(n, dtype=np.int32)
    on_path[0] = 1
    depth = 0
    nodes = 1
    while depth >= 0:
        h = path[depth]
        advanced = False
        while choice[depth] < indptr[h + 1] - indptr[h]:
            w = indices[indptr[h] + choice[depth]]
            choice[depth] += 1
            if depth == n - 1:
                if w == 0:
                    for i in range(n):
                        witness[i] = path[i]
                    return True, witness, nodes
                continue
            if on_path[w]:
                continue
            on_path[w] = 1
            ok = True
            # Degree cut: every unvisited vertex still needs two usable
            # neighbours (unvisited, or the head w, or the start 0).
            for u in range(n):
                if on_path[u]:
                    continue
                avail = 0
                for idx in range(indptr[u], indptr[u + 1]):
                    v = indices[idx]
                    if on_path[v] == 0 or v == w or v == 0:
                        avail += 1
                if avail < 2:
                    ok = False
                    break
            if ok:
                # Connectivity cut: from w, every unvisited vertex and the
                # start must stay reachable through unvisited territory.
                for i in range(n):
                    seen[i] = 0
                seen[w] = 1
                stack[0] = w
                top = 1
                reached = 0
                saw_start = False
                while top > 0:
                    top -= 1
                    x = stack[top]
                    for idx in range(indptr[x], indptr[x + 1]):
                        y = indices[idx]
                        if y == 0:
                            saw_start = True
                        if on_path[y] == 0 and seen[y] == 0:
                            seen[y] = 1
                            stack[top] = y
                            top += 1
                            reached += 1
                if reached != n - depth - 2 or not saw_start:
                    ok = False
            if ok:
                depth += 1
                path[depth] = w
                choice[depth] = 0
                nodes += 1
                advanced = True
                break
            on_path[w] = 0
        if not advanced:
            on_path[path[depth]] = 0
            depth -= 1
    return False, witness, nodes


def _dfs_python(adj, n):
    """Pure-Python twin of the DFS kernel, on plain lists."""
    path = [0] * n
    choice = [0] * n
    on_path = [False] * n
    on_path[0] = True
    depth = 0
    nodes = 1
    while depth >= 0:
        h = path[depth]
        advanced = False
        while choice[depth] < len(adj[h]):
            w = adj[h][choice[depth]]
            choice[depth] += 1
            if depth == n - 1:
                if w == 0:
                    return True, list(path), nodes
                continue
            if on_path[w]:
                continue
            on_path[w] = True
            ok = True
            for u in range(n):
                if on_path[u]:
                    continue
                avail = 0
                for v in adj[u]:
                    if not on_path[v] or v == w or v == 0:
                        avail += 1
                if avail < 2:
                    ok = False
                    break
            if ok:
                seen = [False] * n
                seen[w] = True
                stack = [w]
                reached = 0
                saw_start = False
                while stack:
                    x = stack.pop()
                    for y in adj[x]:
                        if y == 0:
                            saw_start = True
                        if not on_path[y] and not seen[y]:
                            seen[y] = True
                            stack.append(y)
                            reached += 1
                if reached != n - depth - 2 or not saw_start:
                    ok = False
            if ok:
                depth += 1
                path[depth] = w
                choice[depth] = 0
                nodes += 1
                advanced = True
                break
            on_path[w] = False
        if not advanced:
            on_path[path[depth]] = False
            depth -= 1
    return False, None, nodes


# --- DP kernel ------------------------------------------------------------------


def _dp_csr(indptr, indices, n):
    size = 1 << n
    dp = np.zeros(size, dtype=np.uint32)
    dp[1] = 1
    states = 0
    for mask in range(1, size):
        bits = dp[mask]
        if bits == 0:
            continue
        for u in range(n):
            if (bits >> u) & 1:
                states += 1
                for idx in range(indptr[u], indptr[u + 1]):
                    v = indices[idx]
                    if ((mask >> v) & 1) == 0:
                        dp[mask | (1 << v)] |= np.uint32(1) << v
    full = size - 1
    end = -1
    final = int(dp[full])
    for u in range(1, n):
        if (final >> u) & 1:
            for idx in range(indptr[u], indptr[u + 1]):
                if indices[idx] == 0:
                    end = u
                    break
            if end >= 0:
                break
    witness = np.zeros(n, dtype=np.int32)
    if end < 0:
        return False, witness, states
    mask = full
    cur = end
    for pos in range(n - 1, 0, -1):
        witness[pos] = cur
        pmask = mask ^ (1 << cur)
        for idx in range(indptr[cur], indptr[cur + 1]):
            p = indices[idx]
            if ((pmask >> p) & 1) and ((int(dp[pmask]) >> p) & 1):
                cur = p
                mask = pmask
                break
    return True, witness, states


def _popcount(masks):
    x = masks.astype(np.uint64)
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + (
        (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
    )
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


def _dp_numpy(adj, n):
    """Vectorized twin of the DP kernel: one numpy pass per popcount layer."""
    size = 1 << n
    dp = np.zeros(size, dtype=np.uint32)
    dp[1] = 1
    masks = np.arange(size, dtype=np.int64)
    pop = _popcount(masks)
    states = 0
    for k in range(1, n):
        layer = masks[pop == np.uint64(k)]
        bits = dp[layer]
        alive = layer[bits != 0]
        if alive.size == 0:
            continue
        abits = dp[alive]
        for u in range(n):
            has = (abits >> np.uint32(u)) & np.uint32(1) == 1
            src = alive[has]
            if src.size == 0:
                continue
            states += int(src.size)
            for v in adj[u]:
                ext = src[(src >> np.int64(v)) & 1 == 0]
                if ext.size:
                    tgt = ext | np.int64(1 << v)
                    dp[tgt] |= np.uint32(1 << v)
    full = size - 1
    end = -1
    final = int(dp[full])
    for u in range(1, n):
        if (final >> u) & 1 and 0 in adj[u]:
            end = u
            break
    if end < 0:
        return False, None, states
    witness = [0] * n
    mask = full
    cur = end
    for pos in range(n - 1, 0, -1):
        witness[pos] = cur
        pmask = mask ^ (1 << cur)
        for p in adj[cur]:
            if ((pmask >> p) & 1) and ((int(dp[pmask]) >> p) & 1):
                cur = p
                mask = pmask
                break
    return True, witness, states


if NUMBA_ENABLED:
    _dfs_njit = njit(cache=True)(_dfs_csr)
    _dp_njit = njit(cache=True)(_dp_csr)
else:
    _dfs_njit = None
    _dp_njit = None


def run_dfs(adj):
    """(found, witness_list_or_None, nodes) under the selected backend."""
    n = len(adj)
    if NUMBA_ENABLED:
        indptr, indices = csr_from_adjacency(adj)
        found, witness, nodes = _dfs_njit(indptr, indices, n)
        return bool(found), ([int(v) for v in witness] if found else None), int(nodes)
    found, witness, nodes = _dfs_python(adj, n)
    return found, witness, nodes


def run_dp(adj):
    """(found, witness_list_or_None, states) under the selected backend."""
    n = len(adj)
    if NUMBA_ENABLED:
        indptr, indices = csr_from_adjacency(adj)
        found, witness, states = _dp_njit(indptr, indices, n)
        return bool(found), ([int(v) for v in witness] if found else None), int(states)
    return _dp_numpy(adj, n)

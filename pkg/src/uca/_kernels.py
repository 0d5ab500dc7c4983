"""Compiled inner loops for longest paths over large unrolled synthetic graphs."""

import numpy as np
from numba import njit

NEG = np.int64(-(1 << 62))


@njit(cache=True)
def topo_order(n, src, dst):
    indeg = np.zeros(n, dtype=np.int64)
    for k in range(src.shape[0]):
        indeg[dst[k]] += 1
    indptr, adj = csr(n, src, dst)
    order = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    top = 0
    for v in range(n):
        if indeg[v] == 0:
            stack[top] = v
            top += 1
    cnt = 0
    while top > 0:
        top -= 1
        v = stack[top]
        order[cnt] = v
        cnt += 1
        for j in range(indptr[v], indptr[v + 1]):
            w = dst[adj[j]]
            indeg[w] -= 1
            if indeg[w] == 0:
                stack[top] = w
                top += 1
    return order, cnt


@njit(cache=True)
def csr(n, src, dst):
    """Edge ids grouped by tail vertex."""
    indptr = np.zeros(n + 1, dtype=np.int64)
    for k in range(src.shape[0]):
        indptr[src[k] + 1] += 1
    for v in range(n):
        indptr[v + 1] += indptr[v]
    fill = indptr[:-1].copy()
    adj = np.empty(src.shape[0], dtype=np.int64)
    for k in range(src.shape[0]):
        adj[fill[src[k]]] = k
        fill[src[k]] += 1
    return indptr, adj


@njit(cache=True)
def single_source(n, order, rank, indptr, adj, dst, w, x):
    lab = np.full(n, NEG, dtype=np.int64)
    pred = np.full(n, -1, dtype=np.int64)
    lab[x] = 0
    for p in range(rank[x], n):
        v = order[p]
        lv = lab[v]
        if lv == NEG:
            continue
        for j in range(indptr[v], indptr[v + 1]):
            k = adj[j]
            u = dst[k]
            cand = lv + w[k]
            if cand > lab[u]:
                lab[u] = cand
                pred[u] = k
    return lab, pred


@njit(cache=True)
def best_cycle(n, order, indptr, adj, dst, w, bsrc, bdst, bw):
    """Heaviest forward path ``x -> y`` plus backward edge ``y -> x``; returns ``(value, edge)``."""
    rank = np.empty(n, dtype=np.int64)
    for p in range(n):
        rank[order[p]] = p
    # backward edges grouped by target
    bptr, badj = csr(n, bdst, bsrc)
    best = NEG
    arg = -1
    for x in range(n):
        if bptr[x] == bptr[x + 1]:
            continue
        lab, _ = single_source(n, order, rank, indptr, adj, dst, w, x)
        for j in range(bptr[x], bptr[x + 1]):
            k = badj[j]
            y = bsrc[k]
            if lab[y] != NEG:
                val = lab[y] + bw[k]
                if val > best:
                    best = val
                    arg = k
    return best, arg


@njit(cache=True)
def grid_max_cycle(x):
    """Heaviest pseudo-grid cycle for tuples ``x`` (shape ``(k, 4)``): best row-to-same-row path plus 1."""
    k = x.shape[0]
    R = 4 * k
    best = NEG
    lab = np.empty(R, dtype=np.int64)
    nxt = np.empty(R, dtype=np.int64)
    for r0 in range(R):
        lab[:] = NEG
        lab[r0] = 0
        for q in range(2 * k):
            t = q // 2
            for h in range(R - 1):
                if lab[h] == NEG:
                    continue
                p = h % 2
                if q % 2 == 0:
                    w = x[t, 2 + p] + x[t, p] + 1
                else:
                    w = x[t, 3 - p] + x[t, p] + 1
                if lab[h] + w > lab[h + 1]:
                    lab[h + 1] = lab[h] + w
            if q + 1 == 2 * k:
                break
            nxt[:] = NEG
            for h in range(1, R):
                if lab[h] != NEG:
                    nxt[h - 1] = lab[h] + (x[t, h % 2] if q % 2 == 0 else 1)
            lab[:] = nxt
        if lab[r0] > best:
            best = lab[r0]
    return best + 1

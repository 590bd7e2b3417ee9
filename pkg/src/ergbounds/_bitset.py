"""Numba kernels for bitset branch-and-bound maximum clique.

Adjacency is a ``uint64[n, words]`` matrix; bit ``b`` of word ``w`` in row
``v`` stands for vertex ``64*w + b``. The search is the greedy-coloring
branch and bound (MCQ/BBMC family) with an explicit stack so node budgets and
partial upper bounds are easy to report.
"""

from __future__ import annotations

import numpy as np
from numba import njit
from numba.cpython.unsafe.numbers import trailing_zeros

_ONE = np.uint64(1)


def pack(adj: np.ndarray) -> np.ndarray:
    """Boolean adjacency matrix -> uint64 row bitsets."""
    n = adj.shape[0]
    words = max(1, (n + 63) // 64)
    padded = np.zeros((n, words * 64), dtype=bool)
    padded[:, :n] = adj
    # little-endian bit order inside each byte, bytes little-endian inside each word
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(n, words)


@njit(cache=True, nogil=True)
def _color_classes(P, adj, nw, kmin, verts, cols):
    # Sequential greedy coloring of the candidate set P; vertices whose
    # color is below kmin cannot improve the incumbent and are not listed.
    U = P.copy()
    Q = np.empty(nw, np.uint64)
    cnt = 0
    k = 0
    while True:
        empty = True
        for w in range(nw):
            if U[w] != 0:
                empty = False
                break
        if empty:
            break
        k += 1
        for w in range(nw):
            Q[w] = U[w]
        for w in range(nw):
            while Q[w] != 0:
                b = trailing_zeros(Q[w])
                v = w * 64 + b
                bit = _ONE << np.uint64(b)
                Q[w] &= ~bit
                U[w] &= ~bit
                for x in range(w, nw):
                    Q[x] &= ~adj[v, x]
                if k >= kmin:
                    verts[cnt] = v
                    cols[cnt] = k
                    cnt += 1
    return cnt


@njit(cache=True, nogil=True)
def max_clique_bb(adj, n, init_best, budget):
    """Returns (best size, best clique, nodes, completed, upper bound).

    The clique array is empty when no clique larger than ``init_best`` was
    found. On budget exhaustion the upper bound is the largest color bound
    over the unexplored branches still on the stack.
    """
    nw = adj.shape[1]
    depth_max = n + 1
    P = np.zeros((depth_max, nw), np.uint64)
    verts = np.empty((depth_max, n), np.int64)
    cols = np.empty((depth_max, n), np.int64)
    pos = np.full(depth_max, -1, np.int64)
    clique = np.empty(n, np.int64)
    best_clique = np.empty(n, np.int64)
    best = init_best
    found = 0
    for v in range(n):
        P[0, v // 64] |= _ONE << np.uint64(v % 64)
    root_colors = _color_classes(P[0], adj, nw, 1, verts[0], cols[0])
    root_bound = 0
    if root_colors > 0:
        root_bound = cols[0, root_colors - 1]
    # drop vertices that cannot beat the incumbent
    keep = 0
    for i in range(root_colors):
        if cols[0, i] > best:
            verts[0, keep] = verts[0, i]
            cols[0, keep] = cols[0, i]
            keep += 1
    pos[0] = keep - 1
    nodes = 1
    d = 0
    aborted = False
    newP = np.empty(nw, np.uint64)
    while d >= 0:
        i = pos[d]
        if i < 0 or d + cols[d, i] <= best:
            pos[d] = -1
            d -= 1
            continue
        v = verts[d, i]
        nonempty = False
        for w in range(nw):
            newP[w] = P[d, w] & adj[v, w]
            if newP[w] != 0:
                nonempty = True
        if nonempty and nodes >= budget:
            aborted = True
            break
        pos[d] = i - 1
        clique[d] = v
        P[d, v // 64] &= ~(_ONE << np.uint64(v % 64))
        if not nonempty:
            if d + 1 > best:
                best = d + 1
                found = best
                for j in range(d + 1):
                    best_clique[j] = clique[j]
            continue
        nodes += 1
        for w in range(nw):
            P[d + 1, w] = newP[w]
        c = _color_classes(P[d + 1], adj, nw, best - d, verts[d + 1], cols[d + 1])
        pos[d + 1] = c - 1
        d += 1
    ub = best
    if aborted:
        for level in range(d + 1):
            if pos[level] >= 0:
                b = level + cols[level, pos[level]]
                if b > ub:
                    ub = b
        if root_bound < ub:
            ub = root_bound
    return best, best_clique[:found].copy(), nodes, not aborted, ub

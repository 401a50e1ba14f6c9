"""Closure kernels for the vertex and edge threshold processes.

Both backends return ``(round_of, counts)``: ``round_of[i]`` is -1 for an
element that never activates, 0 for a seed element and ``t`` for an element
activated in synchronous round ``t``. ``counts`` holds, per vertex, the number
of active neighbours (vertex mode) or active incident edges (edge mode) in the
final state.

The numba kernels run a frontier sweep that touches every adjacency slot at
most once per activation, O(sum of degrees) overall. The numpy kernels
recompute the whole count vector every round; slower on long cascades but an
independent implementation of the same synchronous rule.
"""
import numpy as np

from ._accel import njit


@njit(cache=True)
def _vertex_rounds_numba(indptr, indices, seed, r, allowed):
    nv = indptr.shape[0] - 1
    round_of = np.full(nv, -1, np.int64)
    counts = np.zeros(nv, np.int64)
    queued = np.zeros(nv, np.bool_)
    frontier = np.empty(nv, np.int64)
    nxt = np.empty(nv, np.int64)
    nf = 0
    for v in range(nv):
        if seed[v]:
            round_of[v] = 0
            queued[v] = True
            frontier[nf] = v
            nf += 1
    t = 0
    while True:
        nn = 0
        if t == 0 and r <= 0:
            for v in range(nv):
                if not queued[v] and allowed[v]:
                    queued[v] = True
                    nxt[nn] = v
                    nn += 1
        for k in range(nf):
            u = frontier[k]
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                counts[w] += 1
                if not queued[w] and counts[w] >= r and allowed[w]:
                    queued[w] = True
                    nxt[nn] = w
                    nn += 1
        if nn == 0:
            break
        t += 1
        for k in range(nn):
            round_of[nxt[k]] = t
        frontier, nxt = nxt, frontier
        nf = nn
    return round_of, counts


@njit(cache=True)
def _edge_rounds_numba(indptr, slot_edge, edge_u, edge_v, seed, r, allowed):
    ne = edge_u.shape[0]
    nv = indptr.shape[0] - 1
    round_of = np.full(ne, -1, np.int64)
    counts = np.zeros(nv, np.int64)
    saturated = np.zeros(nv, np.bool_)
    queued = np.zeros(ne, np.bool_)
    frontier = np.empty(ne, np.int64)
    nxt = np.empty(ne, np.int64)
    touched = np.empty(2 * ne + nv, np.int64)
    nf = 0
    for e in range(ne):
        if seed[e]:
            round_of[e] = 0
            queued[e] = True
            frontier[nf] = e
            nf += 1
    t = 0
    while True:
        nt = 0
        if t == 0:
            for v in range(nv):
                touched[nt] = v
                nt += 1
        for k in range(nf):
            e = frontier[k]
            a = edge_u[e]
            b = edge_v[e]
            counts[a] += 1
            counts[b] += 1
            touched[nt] = a
            touched[nt + 1] = b
            nt += 2
        nn = 0
        for k in range(nt):
            x = touched[k]
            if saturated[x] or counts[x] < r:
                continue
            saturated[x] = True
            for p in range(indptr[x], indptr[x + 1]):
                e2 = slot_edge[p]
                if not queued[e2] and allowed[e2]:
                    queued[e2] = True
                    nxt[nn] = e2
                    nn += 1
        if nn == 0:
            break
        t += 1
        for k in range(nn):
            round_of[nxt[k]] = t
        frontier, nxt = nxt, frontier
        nf = nn
    return round_of, counts


def _vertex_rounds_numpy(indptr, indices, seed, r, allowed):
    nv = indptr.shape[0] - 1
    src = np.repeat(np.arange(nv), np.diff(indptr))
    active = seed.astype(bool).copy()
    round_of = np.where(active, 0, -1).astype(np.int64)
    t = 0
    while True:
        counts = np.bincount(indices[active[src]], minlength=nv)
        new = ~active & allowed & (counts >= r)
        if not new.any():
            return round_of, counts.astype(np.int64)
        t += 1
        round_of[new] = t
        active |= new


def _edge_rounds_numpy(indptr, slot_edge, edge_u, edge_v, seed, r, allowed):
    nv = indptr.shape[0] - 1
    active = seed.astype(bool).copy()
    round_of = np.where(active, 0, -1).astype(np.int64)
    t = 0
    while True:
        counts = np.bincount(edge_u[active], minlength=nv) + np.bincount(edge_v[active], minlength=nv)
        sat = counts >= r
        new = ~active & allowed & (sat[edge_u] | sat[edge_v])
        if not new.any():
            return round_of, counts.astype(np.int64)
        t += 1
        round_of[new] = t
        active |= new


VERTEX_KERNELS = {"numba": _vertex_rounds_numba, "numpy": _vertex_rounds_numpy}
EDGE_KERNELS = {"numba": _edge_rounds_numba, "numpy": _edge_rounds_numpy}

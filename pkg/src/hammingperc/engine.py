"""r-neighbour (vertex) and r-edge bootstrap closures with round traces.

Vertex rule: an inactive vertex with at least ``r`` active neighbours activates.
Edge rule: an inactive edge activates when one of its endpoints is incident to
at least ``r`` active edges. With ``r = 0`` every non-seed element activates in
round 1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._accel import default_backend
from ._kernels import EDGE_KERNELS, VERTEX_KERNELS
from .graphs import GenericGraph

MODES = ("vertex", "edge")


@dataclass(frozen=True, eq=False)
class PercState:
    mode: str
    r: int
    seed: np.ndarray
    round_of: np.ndarray
    counters: np.ndarray

    @property
    def active(self) -> np.ndarray:
        return self.round_of >= 0

    @property
    def percolated(self) -> bool:
        return bool((self.round_of >= 0).all())

    @property
    def closure_size(self) -> int:
        return int((self.round_of >= 0).sum())

    @property
    def n_rounds(self) -> int:
        return int(self.round_of.max(initial=0)) if self.round_of.size else 0

    @property
    def rounds(self) -> list[np.ndarray]:
        """Indices newly activated in rounds 1, 2, ...; seeds excluded."""
        return [np.flatnonzero(self.round_of == t) for t in range(1, self.n_rounds + 1)]

    def trace(self, source: str = "") -> dict:
        return {
            "mode": self.mode,
            "n_or_file": source,
            "r": self.r,
            "seed": np.flatnonzero(self.seed).tolist(),
            "rounds": [x.tolist() for x in self.rounds],
            "percolated": self.percolated,
            "closure_size": self.closure_size,
        }

    def trace_json(self, source: str = "") -> str:
        return json.dumps(self.trace(source))


def _size(g: GenericGraph, mode: str) -> int:
    if mode == "vertex":
        return g.n_vertices
    if mode == "edge":
        return g.n_edges
    raise ValueError(f"mode must be 'vertex' or 'edge', got {mode!r}")


def as_mask(seed, size: int) -> np.ndarray:
    """Accept an index collection or a boolean mask; return a fresh bool mask."""
    arr = np.asarray(seed if not isinstance(seed, (set, frozenset)) else sorted(seed))
    if arr.dtype == bool:
        if arr.shape != (size,):
            raise ValueError(f"mask has shape {arr.shape}, expected ({size},)")
        return arr.copy()
    idx = arr.astype(np.int64).ravel()
    if idx.size and (idx.min() < 0 or idx.max() >= size):
        raise IndexError(f"seed index out of range [0, {size})")
    mask = np.zeros(size, dtype=bool)
    mask[idx] = True
    return mask


def _run(g: GenericGraph, mode: str, seed, r: int, allowed=None, backend: str | None = None):
    size = _size(g, mode)
    mask = as_mask(seed, size)
    allowed = np.ones(size, dtype=bool) if allowed is None else as_mask(allowed, size)
    backend = backend or default_backend()
    if mode == "vertex":
        return mask, VERTEX_KERNELS[backend](g.indptr, g.indices, mask, int(r), allowed)
    return mask, EDGE_KERNELS[backend](g.indptr, g.slot_edge, g.edge_u, g.edge_v, mask, int(r), allowed)


def close_vertices(g: GenericGraph, seed, r: int, *, allowed=None, backend: str | None = None) -> PercState:
    mask, (round_of, counts) = _run(g, "vertex", seed, r, allowed, backend)
    return PercState("vertex", int(r), mask, round_of, counts)


def close_edges(g: GenericGraph, seed, r: int, *, allowed=None, backend: str | None = None) -> PercState:
    """``allowed`` restricts which edges may activate; seeds are kept regardless."""
    mask, (round_of, counts) = _run(g, "edge", seed, r, allowed, backend)
    return PercState("edge", int(r), mask, round_of, counts)


def close(g: GenericGraph, seed, r: int, mode: str, **kw) -> PercState:
    if mode == "vertex":
        return close_vertices(g, seed, r, **kw)
    if mode == "edge":
        return close_edges(g, seed, r, **kw)
    raise ValueError(f"mode must be 'vertex' or 'edge', got {mode!r}")


def closure_mask(g: GenericGraph, mode: str, seed_mask: np.ndarray, r: int, backend: str | None = None) -> np.ndarray:
    """Final active mask only; the hot call of the exhaustive search."""
    backend = backend or default_backend()
    allowed = np.ones(seed_mask.shape[0], dtype=bool)
    if mode == "vertex":
        round_of, _ = VERTEX_KERNELS[backend](g.indptr, g.indices, seed_mask, r, allowed)
    else:
        round_of, _ = EDGE_KERNELS[backend](g.indptr, g.slot_edge, g.edge_u, g.edge_v, seed_mask, r, allowed)
    return round_of >= 0


def closure_with_order(g: GenericGraph, seed, r: int, mode: str, permutation: Sequence[int]) -> np.ndarray:
    """Asynchronous closure: sweep candidates in ``permutation`` order, activating
    each as soon as its rule is met, until a full sweep changes nothing.

    Elements missing from ``permutation`` are never considered.
    """
    size = _size(g, mode)
    active = as_mask(seed, size)
    order = [int(x) for x in permutation]
    nv = g.n_vertices
    counts = np.zeros(nv, dtype=np.int64)
    if mode == "vertex":
        for v in np.flatnonzero(active):
            counts[g.neighbors(v)] += 1
    else:
        np.add.at(counts, g.edge_u[active], 1)
        np.add.at(counts, g.edge_v[active], 1)
    eu = g.edge_u.tolist()
    ev = g.edge_v.tolist()
    nbrs = [g.neighbors(v).tolist() for v in range(nv)]
    cnt = counts.tolist()
    act = active.tolist()
    changed = True
    while changed:
        changed = False
        for x in order:
            if act[x]:
                continue
            if mode == "vertex":
                if cnt[x] >= r:
                    act[x] = True
                    for w in nbrs[x]:
                        cnt[w] += 1
                    changed = True
            else:
                a, b = eu[x], ev[x]
                if cnt[a] >= r or cnt[b] >= r:
                    act[x] = True
                    cnt[a] += 1
                    cnt[b] += 1
                    changed = True
    return np.array(act, dtype=bool)


def recount(g: GenericGraph, mode: str, active: np.ndarray) -> np.ndarray:
    """Brute-force per-vertex counters for an active mask."""
    counts = np.zeros(g.n_vertices, dtype=np.int64)
    if mode == "vertex":
        for v in range(g.n_vertices):
            counts[v] = int(active[g.neighbors(v)].sum())
    else:
        for e, (a, b) in enumerate(g.edges()):
            if active[e]:
                counts[a] += 1
                counts[b] += 1
    return counts


def check_rounds(g: GenericGraph, state: PercState) -> bool:
    """Every element of round t meets the rule against rounds < t, and not earlier."""
    ro = state.round_of
    r = state.r
    for x in np.flatnonzero(ro > 0):
        t = ro[x]
        before = (ro >= 0) & (ro < t)
        earlier = (ro >= 0) & (ro < t - 1)
        if _witnesses(g, state.mode, x, before) < r:
            return False
        if t > 1 and _witnesses(g, state.mode, x, earlier) >= r:
            return False
    return True


def _witnesses(g: GenericGraph, mode: str, x: int, active: np.ndarray) -> int:
    if mode == "vertex":
        return int(active[g.neighbors(x)].sum())
    a, b = int(g.edge_u[x]), int(g.edge_v[x])
    ca = int(active[g.slot_edge[g.indptr[a] : g.indptr[a + 1]]].sum())
    cb = int(active[g.slot_edge[g.indptr[b] : g.indptr[b + 1]]].sum())
    return max(ca, cb)


def load_trace(text: str) -> dict:
    data = json.loads(text)
    for key in ("mode", "r", "seed", "rounds", "percolated", "closure_size"):
        if key not in data:
            raise ValueError(f"trace missing {key!r}")
    return data


def seed_from_indices(indices: Iterable[int], size: int) -> np.ndarray:
    return as_mask(list(indices), size)

"""Explicit percolating sets for K_n^d.

``edge_percolating_set`` recurses on the last coordinate: layer ``i`` (vertices
whose last digit is ``i``) receives a recursive seed for threshold ``r - i``, and
every "vertical" edge between layers ``i < j < g`` is added. Its size follows the
layer recurrence exactly.

``vertex_percolating_set`` is the cover-plus-low-weight seed: the 0/1
characteristic vectors of a covering family of r-subsets, together with every
vertex of weight r - 2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

import numpy as np

from .engine import close_edges
from .formulas import g_parameter
from .graphs import GenericGraph, HammingGraph, materialize


@dataclass(frozen=True, eq=False)
class EdgeSeed:
    n: int
    d: int
    r: int
    edges: np.ndarray
    pairs: np.ndarray
    provenance: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return int(self.edges.shape[0])

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "d": self.d, "r": self.r, "mode": "edge", "indices": self.edges.tolist(),
             "size": self.size, "provenance": self.provenance}
        )


@lru_cache(maxsize=256)
def _edge_pairs(n: int, d: int, r: int) -> np.ndarray:
    if d == 0 or r < 0:
        return np.zeros((0, 2), dtype=np.int64)
    block = n ** (d - 1)
    g = g_parameter(n, d, r).g
    parts = []
    for i in range(n):
        sub = _edge_pairs(n, d - 1, r - i)
        parts.append(sub + i * block)
    v = np.arange(block, dtype=np.int64)
    for i, j in combinations(range(g), 2):
        parts.append(np.stack([v + i * block, v + j * block], axis=1))
    out = np.concatenate(parts) if parts else np.zeros((0, 2), dtype=np.int64)
    out.setflags(write=False)
    return out


def edge_percolating_set(n: int, d: int, r: int, graph: GenericGraph | None = None) -> EdgeSeed:
    if n < 2 or d < 0 or r < 0:
        raise ValueError(f"need n >= 2, d >= 0, r >= 0 (n={n}, d={d}, r={r})")
    h = HammingGraph(n, d)
    g = graph if graph is not None else materialize(h)
    pairs = _edge_pairs(n, d, r)
    edges = np.sort(g.edge_indices(pairs)) if pairs.shape[0] else np.zeros(0, dtype=np.int64)
    if np.unique(edges).shape[0] != edges.shape[0]:
        raise AssertionError("construction produced a repeated edge")
    layers = []
    if d > 0:
        gp = g_parameter(n, d, r)
        for i in range(n):
            layers.append({"layer": i, "sub_r": r - i, "size": int(_edge_pairs(n, d - 1, r - i).shape[0])})
        cross = {"g": gp.g, "f": gp.f, "size": comb(gp.g, 2) * n ** (d - 1)}
    else:
        cross = {"g": 0, "f": None, "size": 0}
    provenance = {"layers": layers, "cross": cross}
    return EdgeSeed(n, d, r, edges, np.array(pairs), provenance)


def replay_layers(seed: EdgeSeed, graph: GenericGraph | None = None, backend: str | None = None) -> list[bool]:
    """Activate layer by layer, allowing at stage ``i`` only edges touching
    layers ``0..i``. Entry ``i`` says whether every edge touching layer ``i``
    was active at the end of stage ``i``."""
    n, d, r = seed.n, seed.d, seed.r
    g = graph if graph is not None else materialize(HammingGraph(n, d))
    if d == 0:
        return []
    block = n ** (d - 1)
    lu = g.edge_u // block
    lv = g.edge_v // block
    active = np.zeros(g.n_edges, dtype=bool)
    active[seed.edges] = True
    done = []
    for i in range(n):
        allowed = lu <= i
        state = close_edges(g, active, r, allowed=allowed, backend=backend)
        active = state.active
        touching = (lu == i) | (lv == i)
        done.append(bool(active[touching].all()))
    return done


# --- covering family and vertex seed -----------------------------------------


@dataclass(frozen=True)
class CoverFamily:
    d: int
    r: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.blocks)

    @property
    def quality(self) -> float:
        """|F| divided by the counting bound C(d, r-1)/r."""
        return self.size / (comb(self.d, self.r - 1) / self.r)

    def covers_all(self) -> bool:
        covered = set()
        for b in self.blocks:
            covered.update(combinations(b, self.r - 1))
        return len(covered) == comb(self.d, self.r - 1)


def cover_family(d: int, r: int) -> CoverFamily:
    """Greedy cover of all (r-1)-subsets of {0..d-1} by r-subsets.

    Each step takes the block covering the most uncovered (r-1)-subsets; ties go
    to the lexicographically smallest block.
    """
    if not 1 <= r <= d:
        raise ValueError(f"cover_family needs 1 <= r <= d (d={d}, r={r})")
    blocks = list(combinations(range(d), r))
    faces = {b: list(combinations(b, r - 1)) for b in blocks}
    uncovered = set(combinations(range(d), r - 1))
    chosen = []
    while uncovered:
        best, best_gain = None, 0
        for b in blocks:
            gain = sum(1 for f in faces[b] if f in uncovered)
            if gain > best_gain:
                best, best_gain = b, gain
        chosen.append(best)
        uncovered.difference_update(faces[best])
    return CoverFamily(d, r, tuple(chosen))


@dataclass(frozen=True, eq=False)
class VertexSeed:
    n: int
    d: int
    r: int
    family: CoverFamily
    U: np.ndarray
    W: np.ndarray

    @property
    def vertices(self) -> np.ndarray:
        return np.union1d(self.U, self.W)

    @property
    def size(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def expected_size(self) -> int:
        low = (self.n - 1) ** (self.r - 2) * comb(self.d, self.r - 2) if self.r >= 2 else 0
        return self.family.size + low

    @property
    def asymptotic_ratio(self) -> float:
        """size / (d^(r-1) / r!); tends to 1 only as d grows without bound."""
        return self.size / (self.d ** (self.r - 1) / factorial(self.r))

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "d": self.d, "r": self.r, "mode": "vertex", "indices": self.vertices.tolist(),
             "size": self.size,
             "provenance": {"U": self.U.tolist(), "W": self.W.tolist(), "family": [list(b) for b in self.family.blocks]}}
        )


def vertex_weights(h: HammingGraph) -> np.ndarray:
    v = np.arange(h.vertex_count, dtype=np.int64)
    w = np.zeros_like(v)
    for k in range(h.d):
        w += (v // h.n**k) % h.n != 0
    return w


def vertex_percolating_set(n: int, d: int, r: int) -> VertexSeed:
    if n < 2 or r < 1 or d < r:
        raise ValueError(f"vertex construction needs n >= 2, r >= 1, d >= r (n={n}, d={d}, r={r})")
    h = HammingGraph(n, d)
    family = cover_family(d, r)
    U = np.array(sorted(sum(n**k for k in b) for b in family.blocks), dtype=np.int64)
    if r >= 2:
        W = np.flatnonzero(vertex_weights(h) == r - 2).astype(np.int64)
    else:
        W = np.zeros(0, dtype=np.int64)
    return VertexSeed(n, d, r, family, U, W)

"""Exact minimum percolating sets on small graphs.

Iterative deepening on the seed size ``k``. Within a level, seeds are grown
in increasing index order and each new element must lie outside the closure
of the elements already chosen: a seed with an element inside the closure of
the others is never minimal, so nothing is lost. Partial seeds are further
deduplicated by a memo keyed on (closure bitmap, elements still to add),
storing the smallest last index seen; a later partial seed with the same
closure and a larger last index has a subset of the same completions.
"""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .engine import closure_mask
from .graphs import GenericGraph

EXHAUSTIVE_LIMIT = {"edge": 24, "vertex": 20}


@dataclass
class SearchBudget:
    max_elements: int = 64
    max_nodes: int = 20_000_000
    max_seconds: float | None = None


@dataclass
class SearchResult:
    mode: str
    r: int
    optimum: int | None
    witness: list[int]
    nodes: int
    status: str
    lower_bound: int = 0
    levels: list[dict] = field(default_factory=list)

    @property
    def conclusive(self) -> bool:
        return self.status == "optimal"

    def to_json(self) -> str:
        return json.dumps(asdict(self))


class _OutOfBudget(Exception):
    pass


class _Searcher:
    def __init__(self, g: GenericGraph, mode: str, r: int, budget: SearchBudget, backend=None):
        self.g = g
        self.mode = mode
        self.r = r
        self.budget = budget
        self.backend = backend
        self.size = g.n_vertices if mode == "vertex" else g.n_edges
        self.nodes = 0
        self.start = time.monotonic()

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget
        if self.budget.max_seconds is not None and self.nodes % 512 == 0:
            if time.monotonic() - self.start > self.budget.max_seconds:
                raise _OutOfBudget

    def level(self, k: int) -> list[int] | None:
        """A percolating seed of size ``k``, or None after exhausting the level."""
        memo: dict[tuple[bytes, int], int] = {}
        chosen: list[int] = []
        empty = closure_mask(self.g, self.mode, np.zeros(self.size, dtype=bool), self.r, self.backend)
        self._tick()
        if empty.all():
            return []

        def grow(closed: np.ndarray, start: int, left: int) -> bool:
            for e in range(start, self.size - left + 1):
                if closed[e]:
                    continue
                seed = closed.copy()
                seed[e] = True
                new = closure_mask(self.g, self.mode, seed, self.r, self.backend)
                self._tick()
                chosen.append(e)
                if new.all():
                    return True
                if left > 1:
                    key = (np.packbits(new).tobytes(), left - 1)
                    seen = memo.get(key)
                    if seen is None or e < seen:
                        memo[key] = e
                        if grow(new, e + 1, left - 1):
                            return True
                chosen.pop()
            return False

        if k > 0 and grow(empty, 0, k):
            return list(chosen)
        return None


def _minimum(g: GenericGraph, mode: str, r: int, budget: SearchBudget | None, lower_bound: int, backend) -> SearchResult:
    budget = budget or SearchBudget()
    s = _Searcher(g, mode, r, budget, backend)
    lower_bound = max(0, int(lower_bound))
    if s.size > budget.max_elements:
        return SearchResult(mode, r, None, [], 0, "inconclusive", lower_bound)
    levels = []
    try:
        for k in range(lower_bound, s.size + 1):
            before = s.nodes
            witness = s.level(k)
            levels.append({"k": k, "nodes": s.nodes - before, "found": witness is not None})
            if witness is not None:
                if len(witness) < lower_bound:
                    raise AssertionError(f"seed of size {len(witness)} beats the lower bound {lower_bound}")
                return SearchResult(mode, r, len(witness), witness, s.nodes, "optimal", lower_bound, levels)
    except _OutOfBudget:
        return SearchResult(mode, r, None, [], s.nodes, "inconclusive", lower_bound, levels)
    raise AssertionError("the full element set always percolates")


def min_edge_percolating(g: GenericGraph, r: int, budget: SearchBudget | None = None, lower_bound: int = 0,
                         backend: str | None = None) -> SearchResult:
    """Exact m_e(g, r). ``lower_bound`` must be a proven bound (e.g. dim W);
    levels below it are skipped rather than searched."""
    return _minimum(g, "edge", r, budget, lower_bound, backend)


def min_vertex_percolating(g: GenericGraph, r: int, budget: SearchBudget | None = None, lower_bound: int = 0,
                           backend: str | None = None) -> SearchResult:
    """Exact m(g, r); see :func:`min_edge_percolating`."""
    return _minimum(g, "vertex", r, budget, lower_bound, backend)


def min_percolating(g: GenericGraph, r: int, mode: str, **kw) -> SearchResult:
    if mode == "edge":
        return min_edge_percolating(g, r, **kw)
    if mode == "vertex":
        return min_vertex_percolating(g, r, **kw)
    raise ValueError(f"mode must be 'vertex' or 'edge', got {mode!r}")


def brute_force_minimum(g: GenericGraph, r: int, mode: str) -> int:
    """Plain enumeration of all subsets by size; an oracle for tiny graphs only."""
    from itertools import combinations

    size = g.n_vertices if mode == "vertex" else g.n_edges
    for k in range(size + 1):
        for combo in combinations(range(size), k):
            seed = np.zeros(size, dtype=bool)
            seed[list(combo)] = True
            if closure_mask(g, mode, seed, r).all():
                return k
    raise AssertionError("unreachable")

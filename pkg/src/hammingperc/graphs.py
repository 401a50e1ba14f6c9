"""Hamming graphs, generic simple graphs, and exact proper edge colourings.

Vertices of ``K_n^d`` are indexed little-endian: digit ``k`` of vertex ``v`` is
``(v // n**k) % n``. Edges of every materialised graph are indexed in
lexicographic order of ``(min endpoint, max endpoint)``.
"""
from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from sympy import nextprime

MAX_VERTICES = 1 << 26
MAX_EDGES = 1 << 28


class CapacityError(ValueError):
    """Raised when a graph would exceed the addressable size cap."""


@dataclass(frozen=True)
class HammingGraph:
    """Implicit ``K_n^d``; nothing is stored beyond the two parameters."""

    n: int
    d: int

    def __post_init__(self):
        if self.n < 2 or self.d < 0:
            raise ValueError(f"need n >= 2 and d >= 0, got n={self.n}, d={self.d}")
        if self.n**self.d > MAX_VERTICES:
            raise CapacityError(f"K_{self.n}^{self.d} has {self.n ** self.d} vertices, cap is {MAX_VERTICES}")

    @property
    def vertex_count(self) -> int:
        return self.n**self.d

    @property
    def edge_count(self) -> int:
        return self.n**self.d * (self.n - 1) * self.d // 2

    @property
    def degree(self) -> int:
        return (self.n - 1) * self.d

    def decode(self, v: int) -> tuple[int, ...]:
        if not 0 <= v < self.vertex_count:
            raise IndexError(v)
        digits = []
        for _ in range(self.d):
            v, a = divmod(v, self.n)
            digits.append(a)
        return tuple(digits)

    def encode(self, digits: Sequence[int]) -> int:
        if len(digits) != self.d or any(not 0 <= a < self.n for a in digits):
            raise ValueError(f"bad digit tuple {digits!r} for K_{self.n}^{self.d}")
        return sum(a * self.n**k for k, a in enumerate(digits))

    def neighbors(self, v: int) -> list[int]:
        digits = self.decode(v)
        out = []
        for k, a in enumerate(digits):
            step = self.n**k
            for b in range(self.n):
                if b != a:
                    out.append(v + (b - a) * step)
        return sorted(out)

    def weight(self, v: int) -> int:
        return sum(1 for a in self.decode(v) if a)


def build_hamming(n: int, d: int) -> HammingGraph:
    return HammingGraph(n, d)


@dataclass(frozen=True, eq=False)
class GenericGraph:
    """Finite simple undirected graph in CSR form.

    ``indices[indptr[v]:indptr[v+1]]`` are the sorted neighbours of ``v`` and
    ``slot_edge`` gives the edge index of each adjacency slot.
    """

    n_vertices: int
    indptr: np.ndarray
    indices: np.ndarray
    slot_edge: np.ndarray
    edge_u: np.ndarray
    edge_v: np.ndarray
    name: str = ""
    _keys: np.ndarray = field(default=None, repr=False)

    @property
    def n_edges(self) -> int:
        return int(self.edge_u.shape[0])

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.edge_u.tolist(), self.edge_v.tolist()))

    def edge_index(self, u: int, v: int) -> int:
        idx = self.edge_indices([(u, v)])
        return int(idx[0])

    def edge_indices(self, pairs) -> np.ndarray:
        """Vectorised lookup of canonical edge indices for endpoint pairs."""
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        lo = pairs.min(axis=1)
        hi = pairs.max(axis=1)
        keys = lo * self.n_vertices + hi
        if pairs.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        if self._keys.shape[0] == 0:
            raise KeyError(f"no edge {tuple(pairs[0].tolist())}")
        pos = np.searchsorted(self._keys, keys)
        bad = (pos >= self._keys.shape[0]) | (self._keys[np.minimum(pos, self._keys.shape[0] - 1)] != keys)
        if bad.any():
            raise KeyError(f"no edge {tuple(pairs[bad][0].tolist())}")
        return pos.astype(np.int64)

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[tuple[int, int]], name: str = "") -> "GenericGraph":
        arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n_vertices):
            raise ValueError("edge endpoint out of range")
        if (arr[:, 0] == arr[:, 1]).any():
            raise ValueError("loops are not allowed")
        lo = arr.min(axis=1)
        hi = arr.max(axis=1)
        keys = lo * n_vertices + hi
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        if keys.size and (np.diff(keys) == 0).any():
            raise ValueError("multi-edges are not allowed")
        return cls._from_sorted(n_vertices, lo[order], hi[order], name)

    @classmethod
    def _from_sorted(cls, n_vertices: int, eu: np.ndarray, ev: np.ndarray, name: str) -> "GenericGraph":
        m = eu.shape[0]
        eid = np.arange(m, dtype=np.int64)
        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        sid = np.concatenate([eid, eid])
        order = np.lexsort((dst, src))
        indptr = np.zeros(n_vertices + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n_vertices), out=indptr[1:])
        return cls(
            n_vertices=int(n_vertices),
            indptr=indptr,
            indices=dst[order].astype(np.int64),
            slot_edge=sid[order].astype(np.int64),
            edge_u=eu.astype(np.int64),
            edge_v=ev.astype(np.int64),
            name=name,
            _keys=eu.astype(np.int64) * n_vertices + ev.astype(np.int64),
        )


def materialize(h: HammingGraph) -> GenericGraph:
    """Explicit CSR form of ``K_n^d`` with the identity on vertex indices."""
    n, d = h.n, h.d
    nv = h.vertex_count
    if h.edge_count > MAX_EDGES:
        raise CapacityError(f"K_{n}^{d} has {h.edge_count} edges, cap is {MAX_EDGES}")
    v = np.arange(nv, dtype=np.int64)
    us, ws = [], []
    for k in range(d):
        step = n**k
        digit = (v // step) % n
        for b in range(n):
            # keep only pairs with the larger digit on the far side, so each edge appears once
            mask = digit < b
            src = v[mask]
            us.append(src)
            ws.append(src + (b - digit[mask]) * step)
    if us:
        eu = np.concatenate(us)
        ev = np.concatenate(ws)
    else:
        eu = ev = np.zeros(0, dtype=np.int64)
    order = np.argsort(eu * nv + ev, kind="stable")
    return GenericGraph._from_sorted(nv, eu[order], ev[order], name=f"K_{n}^{d}")


def hamming_edge_coordinate(n: int, u: np.ndarray, v: np.ndarray):
    """Coordinate in which each edge's endpoints differ, plus both digits there."""
    diff = np.abs(v - u)
    coord = np.zeros_like(diff)
    step = np.ones_like(diff)
    # diff = |b - a| * n**k with 1 <= |b - a| < n, so k is the n-adic valuation
    while True:
        more = diff % (step * n) == 0
        if not more.any():
            break
        coord += more
        step = np.where(more, step * n, step)
    a = (u // step) % n
    b = (v // step) % n
    return coord, a, b


# --- colourings --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    """Exact colour per canonical edge index.

    ``gammas[t]`` is the multiplier tuple used to colour the cross edges of
    coordinate ``t + 1``; ``level[e]`` is the coordinate (1-based) that
    produced the colour of edge ``e``.
    """

    colors: tuple[Fraction, ...]
    gammas: tuple[tuple[int, ...], ...] = ()
    level: tuple[int, ...] = ()

    @property
    def gamma(self) -> tuple[int, ...]:
        return self.gammas[-1] if self.gammas else ()

    def __len__(self):
        return len(self.colors)

    def fingerprint(self) -> str:
        text = ",".join(f"{c.numerator}/{c.denominator}" for c in self.colors)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def base_complete_coloring(n: int) -> dict[tuple[int, int], int]:
    """Round-robin proper colouring of ``K_n`` with ``n`` (odd) or ``n-1`` (even) colours."""
    colors = {}
    if n % 2:
        for a, b in combinations(range(n), 2):
            colors[a, b] = (a + b) % n + 1
    else:
        m = n - 1
        for a, b in combinations(range(n), 2):
            if b == m:
                colors[a, b] = (2 * a) % m + 1
            else:
                colors[a, b] = (a + b) % m + 1
    return colors


def _next_primes(above: int, count: int, skip: int = 0) -> tuple[int, ...]:
    p = above
    for _ in range(skip):
        p = nextprime(p)
    out = []
    for _ in range(count):
        p = nextprime(p)
        out.append(p)
    return tuple(out)


def hamming_gammas(n: int, d: int, prime_skip: int = 0, base: str = "lift") -> tuple[tuple[int, ...], ...]:
    """Gamma tuples for the coordinates coloured by products.

    With ``base="lift"`` every coordinate 0..d-1 gets a tuple; with
    ``base="round-robin"`` coordinate 0 is coloured directly and tuples start at
    coordinate 1.
    """
    if base == "lift":
        top, first = 1, 0
    elif base == "round-robin":
        top, first = max(base_complete_coloring(n).values()), 1
    else:
        raise ValueError(f"unknown base colouring {base!r}")
    gammas = []
    for _ in range(first, d):
        g = _next_primes(top, n, prime_skip)
        gammas.append(g)
        top = g[-1] * g[-2]
    return tuple(gammas)


def proper_edge_coloring_hamming(n: int, d: int, graph: GenericGraph | None = None, prime_skip: int = 0,
                                 base: str = "lift") -> EdgeColoring:
    """Recursive lift colouring of ``K_n^d``.

    Coordinate ``k`` uses fresh primes ``gamma_0 < ... < gamma_{n-1}``, all
    larger than every colour of the coordinates below, and the edge between
    digits ``a`` and ``b`` gets ``gamma_a * gamma_b``. Edges inside a copy keep
    the colour of the copy, so this is the lift applied d times starting from
    the single vertex. ``base="round-robin"`` instead colours coordinate 0 with
    the round-robin colouring of ``K_n`` (tight only for n <= 3). ``prime_skip``
    skips that many primes before each gamma block.
    """
    if d < 1:
        raise ValueError("colouring needs d >= 1")
    h = HammingGraph(n, d)
    g = graph if graph is not None else materialize(h)
    rr = base_complete_coloring(n)
    gammas = hamming_gammas(n, d, prime_skip, base)
    offset = 0 if base == "lift" else 1
    coord, a, b = hamming_edge_coordinate(n, g.edge_u, g.edge_v)
    colors = []
    for k, x, y in zip(coord.tolist(), a.tolist(), b.tolist()):
        lo, hi = (x, y) if x < y else (y, x)
        if k < offset:
            colors.append(Fraction(rr[lo, hi]))
        else:
            gm = gammas[k - offset]
            colors.append(Fraction(gm[lo] * gm[hi]))
    return EdgeColoring(tuple(colors), gammas, tuple((coord + 1).tolist()))


@dataclass
class ColoringReport:
    ok: bool
    vertex: int | None = None
    edges: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def validate_coloring(g: GenericGraph, c: EdgeColoring) -> ColoringReport:
    """Per-vertex scan for two incident edges sharing a colour."""
    if len(c.colors) != g.n_edges:
        raise ValueError(f"colouring covers {len(c.colors)} edges, graph has {g.n_edges}")
    for v in range(g.n_vertices):
        seen = {}
        for e in g.slot_edge[g.indptr[v] : g.indptr[v + 1]].tolist():
            col = c.colors[e]
            if col in seen:
                return ColoringReport(False, v, (seen[col], e))
            seen[col] = e
    return ColoringReport(True)


# --- text formats ------------------------------------------------------------


def write_edge_list(g: GenericGraph, path) -> None:
    lines = [f"p {g.n_vertices} {g.n_edges}"]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    Path(path).write_text("\n".join(lines) + "\n")


def parse_edge_list(text: str, name: str = "") -> GenericGraph:
    n_vertices = None
    declared = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("#", "c ")):
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 3:
                n_vertices, declared = int(parts[1]), int(parts[2])
            elif parts[0] == "e" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}") from None
    if n_vertices is None:
        raise ValueError("missing 'p <vertices> <edges>' header")
    if declared != len(edges):
        raise ValueError(f"header declares {declared} edges, found {len(edges)}")
    return GenericGraph.from_edges(n_vertices, edges, name=name)


def read_edge_list(path) -> GenericGraph:
    return parse_edge_list(Path(path).read_text(), name=str(path))


def coloring_csv(g: GenericGraph, c: EdgeColoring) -> str:
    buf = io.StringIO()
    buf.write("u,v,numerator,denominator\n")
    for (u, v), col in zip(g.edges(), c.colors):
        buf.write(f"{u},{v},{col.numerator},{col.denominator}\n")
    return buf.getvalue()


def parse_coloring_csv(g: GenericGraph, text: str) -> EdgeColoring:
    colors: list[Fraction | None] = [None] * g.n_edges
    rows = text.strip().splitlines()
    if not rows or rows[0].replace(" ", "") != "u,v,numerator,denominator":
        raise ValueError("expected header u,v,numerator,denominator")
    for row in rows[1:]:
        u, v, num, den = (int(x) for x in row.split(","))
        colors[g.edge_index(u, v)] = Fraction(num, den)
    if any(col is None for col in colors):
        raise ValueError("colouring does not cover every edge")
    return EdgeColoring(tuple(colors))


def complete_graph(n: int) -> GenericGraph:
    return GenericGraph.from_edges(n, combinations(range(n), 2), name=f"K_{n}")


def cycle_graph(n: int) -> GenericGraph:
    return GenericGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C_{n}")


def distinct_coloring(g: GenericGraph) -> EdgeColoring:
    """Trivially proper colouring with colour ``e + 1`` on edge ``e``."""
    return EdgeColoring(tuple(Fraction(e + 1) for e in range(g.n_edges)))


"""Exact dimension of the space of edge functions recognised by low-degree
vertex polynomials, and certificates comparing it with m_e(K_n^d, r).

For a proper colouring ``c`` each vertex ``v`` carries a polynomial ``P_v`` of
degree < r (``r`` unknown coefficients). Matching rows enforce
``P_u(c(uv)) - P_v(c(uv)) = 0``; evaluation rows read off ``P_u(c(uv))``. With
``M`` the matching block and ``Ev`` the evaluation block,

    dim W = rank([M; Ev]) - rank(M),

computed by one fraction-free (Bareiss) elimination that pivots on ``M`` rows
first.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from .formulas import me
from .graphs import EdgeColoring, GenericGraph, HammingGraph, materialize, proper_edge_coloring_hamming, validate_coloring

MAX_COLUMNS = 5000
MAX_BITS = 8192


class BudgetError(RuntimeError):
    pass


def rank_profile(rows: list[list[int]], ncols: int, split: int) -> tuple[int, int]:
    """Ranks of ``rows[:split]`` and of all rows, by integer Bareiss elimination.

    Pivots are drawn from the first ``split`` rows until none remain, then from
    the rest; within a column the pivot with the smallest bit length wins.
    Works in place on ``rows``.
    """
    m = len(rows)
    prev = 1
    rank = 0
    rank_top = None
    pivot_cols = set()
    for phase_limit in (split, m):
        for col in range(ncols):
            if col in pivot_cols:
                continue
            best = None
            for i in range(rank, phase_limit):
                x = rows[i][col]
                if x and (best is None or abs(x).bit_length() < abs(rows[best][col]).bit_length()):
                    best = i
            if best is None:
                continue
            rows[rank], rows[best] = rows[best], rows[rank]
            piv_row = rows[rank]
            piv = piv_row[col]
            for i in range(rank + 1, m):
                row = rows[i]
                a = row[col]
                if a:
                    rows[i] = [(piv * x - a * y) // prev for x, y in zip(row, piv_row)]
                elif any(row):
                    rows[i] = [(piv * x) // prev if x else 0 for x in row]
            prev = piv
            pivot_cols.add(col)
            rank += 1
            if rank == phase_limit:
                break
        if rank_top is None:
            rank_top = rank
    return rank_top, rank


def matrix_rank(rows: list[list[int]], ncols: int) -> int:
    return rank_profile([list(r) for r in rows], ncols, len(rows))[1]


def build_system(g: GenericGraph, colors, r: int) -> tuple[list[list[int]], list[list[int]]]:
    """Integer matching rows and evaluation rows (denominators cleared per row)."""
    ncols = r * g.n_vertices
    matching, evaluation = [], []
    for e, (u, v) in enumerate(g.edges()):
        c = Fraction(colors[e])
        p, q = c.numerator, c.denominator
        powers = [p**k * q ** (r - 1 - k) for k in range(r)]
        row = [0] * ncols
        row[u * r : (u + 1) * r] = powers
        ev_row = list(row)
        row[v * r : (v + 1) * r] = [-x for x in powers]
        matching.append(row)
        evaluation.append(ev_row)
    return matching, evaluation


def wc_dimension(g: GenericGraph, c: EdgeColoring, r: int, *, check_proper: bool = True,
                 max_columns: int = MAX_COLUMNS, max_bits: int = MAX_BITS) -> int:
    if r < 0:
        raise ValueError("r must be nonnegative")
    if len(c.colors) != g.n_edges:
        raise ValueError("colouring does not match the graph")
    if check_proper and not validate_coloring(g, c):
        raise ValueError("colouring is not proper")
    return _ranks(g, c, r, max_columns, max_bits)[1]


def _ranks(g: GenericGraph, c: EdgeColoring, r: int, max_columns: int = MAX_COLUMNS,
           max_bits: int = MAX_BITS) -> tuple[int, int]:
    """(rank of matching rows, dim W)."""
    if r == 0 or g.n_edges == 0:
        return 0, 0
    ncols = r * g.n_vertices
    if ncols > max_columns:
        raise BudgetError(f"{ncols} unknowns exceed the budget of {max_columns}")
    matching, evaluation = build_system(g, c.colors, r)
    widest = max((abs(x).bit_length() for row in evaluation for x in row), default=0)
    if widest > max_bits:
        raise BudgetError(f"matrix entries reach {widest} bits, cap is {max_bits}")
    top, full = rank_profile(matching + evaluation, ncols, len(matching))
    return top, full - top


@dataclass
class Certificate:
    n: int
    d: int
    r: int
    coloring_hash: str
    dim: int
    formula: int
    verdict: str
    nullity: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def certify(n: int, d: int, r: int, prime_skip: int = 0, base: str = "lift") -> Certificate:
    """Compare dim W for the lifted Hamming colouring with the closed formula."""
    h = HammingGraph(n, d)
    g = materialize(h)
    formula = me(n, d, r)
    if d == 0:
        return Certificate(n, d, r, "", 0, formula, "equal" if formula == 0 else "strictly-below")
    c = proper_edge_coloring_hamming(n, d, g, prime_skip=prime_skip, base=base)
    if not validate_coloring(g, c):
        raise ValueError("lifted colouring is not proper")
    top, dim = _ranks(g, c, r)
    if dim > formula:
        verdict = "invalid"
    elif dim == formula:
        verdict = "equal"
    else:
        verdict = "strictly-below"
    nullity = r * g.n_vertices - top
    return Certificate(n, d, r, c.fingerprint(), dim, formula, verdict, nullity)


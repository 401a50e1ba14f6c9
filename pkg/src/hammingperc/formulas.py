"""Exact values of m_e(K_n^d, r) by several independent routes, plus the
binomial identities they rest on.

Everything is computed with Python integers. Strict entry points raise
``FormulaRangeError`` outside their stated parameter range; :func:`me` is the
forgiving one and returns the full edge count once ``r`` reaches the degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb


class FormulaRangeError(ValueError):
    pass


def binom(a: int, b: int) -> int:
    """C(a, b) with C(a, b) = 0 when b < 0 or b > a."""
    if a < 0:
        raise ValueError("binom needs a >= 0")
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def edge_count(n: int, d: int) -> int:
    return n**d * (n - 1) * d // 2


@dataclass(frozen=True)
class GParams:
    f: int
    g: int


def g_parameter(n: int, d: int, r: int) -> GParams:
    f = r - 1 - (n - 1) * (d - 1)
    if f <= -2:
        g = 1
    elif f <= n - 2:
        g = f + 2
    else:
        g = n
    return GParams(f, g)


def _check(n: int, d: int, r: int) -> None:
    if n < 2 or d < 0:
        raise FormulaRangeError(f"need n >= 2, d >= 0 (n={n}, d={d})")
    if not 0 <= r <= (n - 1) * d:
        raise FormulaRangeError(f"r={r} outside [0, {(n - 1) * d}] for n={n}, d={d}")


@lru_cache(maxsize=None)
def _nested(levels: int, prev: int, remaining: int) -> int:
    # sum over i in [0, remaining-1] of C(prev, i) * _nested(levels-1, i, remaining-i);
    # terms with i > prev vanish and are skipped
    if levels == 0:
        return remaining
    total = 0
    for i in range(min(remaining - 1, prev) + 1):
        total += comb(prev, i) * _nested(levels - 1, i, remaining - i)
    return total


def me_nested_sum(n: int, d: int, r: int) -> int:
    """The (n-1)-fold nested binomial sum for m_e(K_n^d, r)."""
    _check(n, d, r)
    return _nested(n - 1, d, r)


@lru_cache(maxsize=None)
def _recurrence(n: int, d: int, r: int) -> int:
    if r < 0 or d == 0:
        return 0
    if r >= (n - 1) * d:
        return edge_count(n, d)
    g = g_parameter(n, d, r).g
    return sum(_recurrence(n, d - 1, r - i) for i in range(n)) + binom(g, 2) * n ** (d - 1)


def me_recurrence(n: int, d: int, r: int) -> int:
    """Layer recurrence over the last coordinate; full edge count for r >= (n-1)d."""
    if n < 2 or d < 0 or r < 0:
        raise FormulaRangeError(f"need n >= 2, d >= 0, r >= 0 (n={n}, d={d}, r={r})")
    return _recurrence(n, d, r)


@lru_cache(maxsize=None)
def _an(n: int, s: int, t: int) -> int:
    if t == 0:
        return s
    return sum(_an(n, s - i, t - 1) for i in range(1, min(s - t, n - 1) + 1))


def an_value(n: int, s: int, t: int) -> int:
    if n < 1 or s < 1 or not 0 <= t <= s - 1:
        raise FormulaRangeError(f"a_n(s, t) needs n >= 1, s >= 1, 0 <= t < s (n={n}, s={s}, t={t})")
    return _an(n, s, t)


def me_via_an(n: int, d: int, r: int) -> int:
    _check(n, d, r)
    return sum(_an(n, r, j) * binom(d, j) for j in range(r))


def me_closed_top(n: int, d: int, r: int) -> int:
    if n < 2 or d < 0 or r < 0 or not (n - 1) * (d - 1) <= r <= (n - 1) * d:
        raise FormulaRangeError(f"top closed form needs (n-1)(d-1) <= r <= (n-1)d (n={n}, d={d}, r={r})")
    doubled = (2 * r - (n - 1) * d) * n**d
    assert doubled % 2 == 0
    return binom(n * d - r, d + 1) + doubled // 2


def me_closed_low(n: int, d: int, r: int) -> int:
    if n < 2 or d < 0 or not 0 <= r <= n - 1:
        raise FormulaRangeError(f"low closed form needs 0 <= r <= n-1 (n={n}, r={r})")
    return binom(d + r, d + 1)


def me_k2(d: int, r: int) -> int:
    if d < 0 or not 0 <= r <= d:
        raise FormulaRangeError(f"K_2 formula needs 0 <= r <= d (d={d}, r={r})")
    return sum((r - i) * binom(d, i) for i in range(r + 1))


def me(n: int, d: int, r: int) -> int:
    """m_e(K_n^d, r) for any r >= 0; r beyond the degree gives |E|."""
    if r > (n - 1) * d:
        return edge_count(n, d)
    return me_nested_sum(n, d, r)


def m_bounds(n: int, d: int, r: int) -> tuple[int, int]:
    """Sandwich ceil(m_e/r) <= m(K_n^d, r) <= m_e + #{v : deg v < r}."""
    value = me(n, d, r)
    if r == 0:
        return 0, 0
    low_degree = n**d if r > (n - 1) * d else 0
    return -(-value // r), value + low_degree


# --- identities --------------------------------------------------------------


def _chain_product(top: int, idx) -> int:
    # C(top, i_1) C(i_1, i_2) ... C(i_{m-1}, i_m)
    out = 1
    prev = top
    for i in idx:
        if i < 0 or i > prev:
            return 0
        out *= comb(prev, i)
        prev = i
    return out


def identity_prop(m: int, k: int) -> tuple[int, int]:
    """Both sides of the k-fold binomial chain identity summing to C(m+k, m).

    Left side: i_1..i_{k-1} range over [0, k], i_k over [0, k - i_1 - ... - i_{k-1}],
    summand C(m, i_k) C(i_k, i_{k-1}) ... C(i_2, i_1).
    """
    if m < 0 or k < 1:
        raise FormulaRangeError("identity_prop needs m >= 0, k >= 1")

    def walk(prefix: list[int], used: int) -> int:
        if len(prefix) == k - 1:
            total = 0
            for last in range(k - used + 1):
                total += _chain_product(m, [last] + prefix[::-1])
            return total
        total = 0
        for i in range(k + 1):
            if used + i > k:
                # the innermost range is already empty
                break
            total += walk(prefix + [i], used + i)
        return total

    return walk([], 0), binom(m + k, m)


def _tuples(count: int, hi: int):
    if count == 0:
        yield ()
        return
    for head in range(hi + 1):
        for tail in _tuples(count - 1, hi):
            yield (head,) + tail


def _check_identity(n: int, d: int, r: int) -> None:
    if n < 2 or d < 0 or r < 0 or not (n - 1) * (d - 1) + 1 <= r <= (n - 1) * d:
        raise FormulaRangeError(f"identity needs (n-1)(d-1)+1 <= r <= (n-1)d (n={n}, d={d}, r={r})")


def identity_frac(n: int, d: int, r: int) -> tuple[int, int]:
    """Full-box signed sum versus (r - (n-1)d/2) n^d; the right side is formed
    doubled and halved exactly."""
    _check_identity(n, d, r)
    lhs = 0
    for idx in _tuples(n - 1, d):
        lhs += (r - sum(idx)) * _chain_product(d, idx)
    doubled = (2 * r - (n - 1) * d) * n**d
    return lhs, doubled // 2


def identity_binom(n: int, d: int, r: int) -> tuple[int, int]:
    """Sum with the last index running from r - i_1 - ... - i_{n-2} to d, versus -C(nd - r, d + 1)."""
    _check_identity(n, d, r)
    lhs = 0
    for head in _tuples(n - 2, d):
        lo = max(0, r - sum(head))
        for last in range(lo, d + 1):
            idx = head + (last,)
            lhs += (r - sum(idx)) * _chain_product(d, idx)
    return lhs, -binom(n * d - r, d + 1)


def formula_row(n: int, d: int, r: int) -> dict:
    """Every applicable formula at one grid point; ``None`` where out of range."""
    over = r > (n - 1) * d
    rr = min(r, (n - 1) * d)
    row = {"n": n, "d": d, "r": r}
    if over:
        full = edge_count(n, d)
        row.update(me_nested=full, me_recur=me_recurrence(n, d, r), me_an=full, closed_low=None, closed_top=None, me_k2=None)
        row["note"] = "r exceeds (n-1)d; |E| returned"
    else:
        row.update(
            me_nested=me_nested_sum(n, d, rr),
            me_recur=me_recurrence(n, d, rr),
            me_an=me_via_an(n, d, rr),
            closed_low=me_closed_low(n, d, r) if r <= n - 1 else None,
            closed_top=me_closed_top(n, d, r) if r >= (n - 1) * (d - 1) else None,
            me_k2=me_k2(d, r) if n == 2 else None,
        )
        row["note"] = ""
    values = [row[k] for k in ("me_nested", "me_recur", "me_an", "closed_low", "closed_top", "me_k2") if row[k] is not None]
    row["agree"] = len(set(values)) == 1
    return row

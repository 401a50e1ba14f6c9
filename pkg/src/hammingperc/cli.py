"""Command-line entry point.

Exit codes: 0 success / percolated, 1 negative result, 2 usage error,
3 budget exhausted.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .certify import BudgetError, certify
from .constructions import edge_percolating_set, replay_layers, vertex_percolating_set
from .engine import close
from .formulas import (
    FormulaRangeError,
    formula_row,
    identity_binom,
    identity_frac,
    identity_prop,
    m_bounds,
)
from .graphs import CapacityError, HammingGraph, materialize, read_edge_list
from .search import EXHAUSTIVE_LIMIT, SearchBudget, min_percolating

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

FORMULA_COLUMNS = ["n", "d", "r", "me_nested", "me_recur", "me_an", "closed_low", "closed_top", "me_k2", "agree", "note"]


class UsageError(Exception):
    pass


def parse_range(text: str | None) -> list[int] | None:
    """'3', '0..4' (inclusive) or '1,3,5'."""
    if text is None or text == "all":
        return None
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                a, b = part.split("..")
                lo, hi = int(a), int(b)
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None
    return out


def grid(args, r_default_extra: int = 0) -> list[tuple[int, int, int]]:
    ns = parse_range(args.n)
    ds = parse_range(args.d)
    if ns is None or ds is None:
        raise UsageError("--n and --d are required")
    rs = parse_range(args.r)
    points = []
    for n in ns:
        if n < 2:
            raise UsageError(f"n must be >= 2, got {n}")
        for d in ds:
            if d < 0:
                raise UsageError(f"d must be >= 0, got {d}")
            for r in rs if rs is not None else range((n - 1) * d + 1 + r_default_extra):
                if r < 0:
                    raise UsageError(f"r must be >= 0, got {r}")
                points.append((n, d, r))
    return points


def _pool_map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(*x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*items)))


def _header(args) -> list[str]:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func",)}
    return [f"# hammingperc {__version__}", f"# config {json.dumps(config, sort_keys=True)}"]


def emit_table(rows: list[dict], columns: list[str], args) -> None:
    if args.format == "json":
        payload = {"tool": "hammingperc", "version": __version__,
                   "config": {k: v for k, v in sorted(vars(args).items()) if k != "func"}, "rows": rows}
        text = json.dumps(payload, indent=1) + "\n"
    else:
        buf = io.StringIO()
        buf.write("\n".join(_header(args)) + "\n")
        w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: "" if row.get(k) is None else row.get(k) for k in columns})
        text = buf.getvalue()
    _write(text, args.out)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --- subcommands -------------------------------------------------------------


def cmd_formula(args) -> int:
    rows = [formula_row(*p) for p in grid(args)]
    emit_table(rows, FORMULA_COLUMNS, args)
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_NEGATIVE


def cmd_table(args) -> int:
    from .plot import svg_curves

    args.n = args.n or "2..5"
    args.d = args.d or "0..6"
    rows = []
    for p in grid(args):
        row = formula_row(*p)
        row["m_lower"], row["m_upper"] = m_bounds(*p)
        rows.append(row)
    emit_table(rows, FORMULA_COLUMNS[:-1] + ["m_lower", "m_upper", "note"], args)
    if args.svg:
        series: dict[str, list] = {}
        for row in rows:
            series.setdefault(f"n={row['n']}, d={row['d']}", []).append((row["r"], row["me_nested"]))
        Path(args.svg).write_text(svg_curves(series, title="m_e(K_n^d, r)"))
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_NEGATIVE


def _graph_and_size(args):
    if args.graph:
        g = read_edge_list(args.graph)
        source = args.graph
    else:
        if args.n is None or args.d is None:
            raise UsageError("give --n and --d, --graph, or --seed-file")
        n, d = int(args.n), int(args.d)
        g = materialize(HammingGraph(n, d))
        source = f"K_{n}^{d}"
    return g, source


def cmd_simulate(args) -> int:
    seed_indices = None
    if args.seed_file:
        try:
            data = json.loads(Path(args.seed_file).read_text())
            seed_indices = [int(x) for x in data["indices"]]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad seed file {args.seed_file}: {exc}") from None
        args.mode = data.get("mode", args.mode)
        if args.r is None:
            args.r = str(data["r"])
        if not args.graph:
            args.n, args.d = str(data["n"]), str(data["d"])
    if args.r is None:
        raise UsageError("--r is required")
    g, source = _graph_and_size(args)
    size = g.n_vertices if args.mode == "vertex" else g.n_edges
    if args.full:
        seed_indices = list(range(size))
    elif seed_indices is None:
        seed_indices = parse_range(args.seed) or [] if args.seed else []
    try:
        state = close(g, np.array(seed_indices, dtype=np.int64), int(args.r), args.mode)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    _write(state.trace_json(source) + "\n", args.out)
    return EXIT_OK if state.percolated else EXIT_NEGATIVE


def cmd_construct(args) -> int:
    n, d, r = int(args.n), int(args.d), int(args.r)
    if args.mode == "edge":
        g = materialize(HammingGraph(n, d))
        seed = edge_percolating_set(n, d, r, g)
        ok = close(g, seed.edges, r, "edge").percolated
        payload = json.loads(seed.to_json())
        payload["percolated"] = ok
        payload["layer_schedule"] = replay_layers(seed, g)
    else:
        seed = vertex_percolating_set(n, d, r)
        g = materialize(HammingGraph(n, d))
        ok = close(g, seed.vertices, r, "vertex").percolated
        payload = json.loads(seed.to_json())
        payload["percolated"] = ok
        payload["expected_size"] = seed.expected_size
        payload["asymptotic_ratio"] = seed.asymptotic_ratio
    _write(json.dumps(payload) + "\n", args.out)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _certify_row(n, d, r):
    try:
        return json.loads(certify(n, d, r).to_json())
    except BudgetError as exc:
        return {"n": n, "d": d, "r": r, "verdict": "budget", "error": str(exc)}


def cmd_certify(args) -> int:
    rows = _pool_map(_certify_row, grid(args), args.jobs)
    emit_table(rows, ["n", "d", "r", "coloring_hash", "dim", "formula", "verdict"], args)
    if any(r["verdict"] == "budget" for r in rows):
        return EXIT_BUDGET
    return EXIT_OK if all(r["verdict"] == "equal" for r in rows) else EXIT_NEGATIVE


def cmd_search(args) -> int:
    if args.edge:
        args.mode = "edge"
    if args.vertex:
        args.mode = "vertex"
    if args.r is None:
        raise UsageError("--r is required")
    r = int(args.r)
    g, source = _graph_and_size(args)
    size = g.n_vertices if args.mode == "vertex" else g.n_edges
    budget = SearchBudget(max_elements=args.budget_elements, max_nodes=args.budget_nodes,
                          max_seconds=args.budget_seconds)
    lower = 0
    use_bound = args.bnb or (size > EXHAUSTIVE_LIMIT[args.mode])
    if use_bound and not args.graph:
        n, d = int(args.n), int(args.d)
        dim = certify(n, d, r).dim
        lower = dim if args.mode == "edge" else (-(-dim // r) if r else 0)
    res = min_percolating(g, r, args.mode, budget=budget, lower_bound=lower)
    payload = json.loads(res.to_json())
    payload["graph"] = source
    _write(json.dumps(payload) + "\n", args.out)
    return EXIT_OK if res.conclusive else EXIT_BUDGET


def verify_identities(max_m: int = 8, max_k: int = 8, max_n: int = 4, max_d: int = 5) -> list[dict]:
    rows = []
    for m in range(max_m + 1):
        for k in range(1, max_k + 1):
            lhs, rhs = identity_prop(m, k)
            rows.append({"identity": "prop", "a": m, "b": k, "c": "", "lhs": lhs, "rhs": rhs, "ok": lhs == rhs})
    for n in range(2, max_n + 1):
        for d in range(max_d + 1):
            for r in range(max(0, (n - 1) * (d - 1) + 1), (n - 1) * d + 1):
                for name, fn in (("frac", identity_frac), ("binom", identity_binom)):
                    lhs, rhs = fn(n, d, r)
                    rows.append({"identity": name, "a": n, "b": d, "c": r, "lhs": lhs, "rhs": rhs, "ok": lhs == rhs})
    return rows


def cmd_verify_identities(args) -> int:
    rows = verify_identities()
    emit_table(rows, ["identity", "a", "b", "c", "lhs", "rhs", "ok"], args)
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_NEGATIVE


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hammingperc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"hammingperc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, grid_flags=True):
        if grid_flags:
            sp.add_argument("--n", help="value, a..b range, or comma list")
            sp.add_argument("--d", help="value, a..b range, or comma list")
            sp.add_argument("--r", help="value, a..b range, or comma list (default: 0..(n-1)d)")
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("formula", help="formula values and their agreement on a grid")
    common(sp)
    sp.set_defaults(func=cmd_formula)

    sp = sub.add_parser("table", help="formula table with sandwich bounds and optional SVG")
    common(sp)
    sp.add_argument("--svg", help="write m_e-vs-r curves here")
    sp.set_defaults(func=cmd_table)

    for name, fn, hlp in (("simulate", cmd_simulate, "run a closure and print its trace"),
                          ("search", cmd_search, "exact minimum percolating set")):
        sp = sub.add_parser(name, help=hlp)
        common(sp)
        sp.add_argument("--mode", choices=["edge", "vertex"], default="edge")
        sp.add_argument("--graph", help="edge-list file ('p V E' then 'e u v' lines)")
        sp.add_argument("--seed-file", help="seed JSON written by 'construct'")
        if name == "simulate":
            sp.add_argument("--seed", help="seed indices, e.g. 0,3,5 or 0..4")
            sp.add_argument("--full", action="store_true", help="seed every element")
        else:
            sp.add_argument("--edge", action="store_true", help="shorthand for --mode edge")
            sp.add_argument("--vertex", action="store_true", help="shorthand for --mode vertex")
            sp.add_argument("--bnb", action="store_true", help="start at the algebraic lower bound")
            sp.add_argument("--budget-nodes", type=int, default=20_000_000)
            sp.add_argument("--budget-seconds", type=float, default=None)
            sp.add_argument("--budget-elements", type=int, default=64)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("construct", help="explicit percolating set, verified by closure")
    common(sp)
    sp.add_argument("--mode", choices=["edge", "vertex"], default="edge")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("certify", help="dim W for the lifted colouring versus the formula")
    common(sp)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("verify-identities", help="check the binomial identities on the standard grid")
    common(sp, grid_flags=False)
    sp.set_defaults(func=cmd_verify_identities)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormulaRangeError, CapacityError, ValueError) as exc:
        print(f"hammingperc {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"hammingperc {args.command}: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())

"""Compare the numba and numpy closure kernels.

    python3 benchmarks/bench_closure.py [--repeat 5]

Both backends are timed on the same seeds and their closures must agree.
The numba timing excludes the first (compiling) call.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from hammingperc._accel import NUMBA_AVAILABLE
from hammingperc.constructions import edge_percolating_set, vertex_percolating_set
from hammingperc.engine import close
from hammingperc.graphs import HammingGraph, materialize

CASES = [
    # (label, n, d, r, mode)
    ("edge K_3^6 r=6", 3, 6, 6, "edge"),
    ("edge K_4^5 r=7", 4, 5, 7, "edge"),
    ("edge K_2^12 r=4", 2, 12, 4, "edge"),
    ("vertex K_3^8 r=3", 3, 8, 3, "vertex"),
    ("vertex K_4^7 r=3", 4, 7, 3, "vertex"),
    ("vertex K_2^16 r=3", 2, 16, 3, "vertex"),
]


def seed_for(n, d, r, mode):
    if mode == "edge":
        return edge_percolating_set(n, d, r).edges
    return vertex_percolating_set(n, d, r).vertices


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["numba"] if NUMBA_AVAILABLE else [])
    print(f"{'case':<22}{'size':>10}{'rounds':>8}" + "".join(f"{b + ' ms':>12}" for b in backends) + f"{'speedup':>10}")
    for label, n, d, r, mode in CASES:
        g = materialize(HammingGraph(n, d))
        seed = seed_for(n, d, r, mode)
        timings, results = {}, {}
        for b in backends:
            close(g, seed, r, mode, backend=b)  # warm-up / JIT compile
            timings[b], results[b] = best_of(lambda: close(g, seed, r, mode, backend=b), args.repeat)
        ref = results["numpy"]
        for b, st in results.items():
            if not np.array_equal(st.round_of, ref.round_of):
                raise SystemExit(f"{label}: backend {b} disagrees with numpy")
        size = g.n_edges if mode == "edge" else g.n_vertices
        speed = timings["numpy"] / timings["numba"] if "numba" in timings else float("nan")
        cols = "".join(f"{timings[b] * 1e3:>12.2f}" for b in backends)
        print(f"{label:<22}{size:>10}{ref.n_rounds:>8}{cols}{speed:>9.1f}x")


if __name__ == "__main__":
    main()

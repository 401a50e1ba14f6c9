import numpy as np
import pytest

from hammingperc._accel import NUMBA_AVAILABLE
from hammingperc.graphs import GenericGraph

BACKENDS = ["numpy"] + (["numba"] if NUMBA_AVAILABLE else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def random_graph(rng: np.random.Generator, max_vertices: int = 24, max_edges: int = 200) -> GenericGraph:
    nv = int(rng.integers(1, max_vertices + 1))
    pairs = [(u, v) for u in range(nv) for v in range(u + 1, nv)]
    if not pairs:
        return GenericGraph.from_edges(nv, [])
    p = rng.uniform(0.05, 0.9)
    keep = [e for e in pairs if rng.random() < p][:max_edges]
    return GenericGraph.from_edges(nv, keep)


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])

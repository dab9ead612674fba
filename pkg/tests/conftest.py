import numpy as np
import pytest
from hypothesis import strategies as st

from chipfire import build_digraph, load_fixture
from chipfire.fixtures import FIXTURES

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def fx():
    return {name: load_fixture(name) for name in FIXTURES}


@st.composite
def strongly_connected_graphs(draw, max_n=4, max_extra=4):
    """A Hamiltonian cycle in random order plus random extra (possibly parallel) arcs."""
    n = draw(st.integers(1, max_n))
    order = draw(st.permutations(range(n)))
    arcs = [(order[i], order[(i + 1) % n]) for i in range(n)] if n > 1 else []
    if n > 1:
        pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
        arcs += draw(st.lists(pair, max_size=max_extra))
    return build_digraph(n, arcs)


@st.composite
def graph_and_vector(draw, lo=-2, hi=4, **kw):
    g = draw(strongly_connected_graphs(**kw))
    x = draw(st.lists(st.integers(lo, hi), min_size=g.n, max_size=g.n))
    return g, np.array(x, dtype=np.int64)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from distlat.digraph import Digraph, Poset
from distlat.intervals import ChainProduct, IntervalFamily

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def digraphs(draw, max_n=6, loops=True):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    arcs = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return Digraph(n, frozenset(arcs))


@st.composite
def posets(draw, max_n=6, min_n=0):
    n = draw(st.integers(min_n, max_n))
    below = [(u, v) for u in range(n) for v in range(u)]
    chosen = draw(st.sets(st.sampled_from(below), max_size=len(below))) if below else set()
    perm = draw(st.permutations(range(n)))
    return Poset.from_relations(n, {(perm[u], perm[v]) for u, v in chosen})


@st.composite
def products(draw, max_d=3, max_n=3):
    return ChainProduct(tuple(draw(st.lists(st.integers(1, max_n), min_size=1, max_size=max_d))))


@st.composite
def families(draw, p=None):
    p = p or draw(products(max_d=2, max_n=3))
    from distlat.intervals import all_intervals
    ivs = list(all_intervals(p))
    return IntervalFamily.of(p, draw(st.sets(st.sampled_from(ivs), max_size=4)))


@pytest.fixture
def grid45():
    return ChainProduct((4, 5))


@pytest.fixture
def one_interval(grid45):
    return IntervalFamily.of(grid45, [(2, 1, 3, 2)])


@pytest.fixture
def grid22():
    return ChainProduct((2, 2))


@pytest.fixture
def not_tight(grid22):
    return IntervalFamily.of(grid22, [(1, 2, 2, 1), (2, 1, 2, 1)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)

from itertools import combinations

import hypothesis.strategies as st
import pytest

from flagfold.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(range(n), [e for e, keep in zip(pairs, mask) if keep])


def all_subsets(items):
    items = list(items)
    for k in range(len(items) + 1):
        yield from combinations(items, k)


def brute_cliques(G):
    """Every nonempty clique of G, by checking all vertex subsets."""
    return [
        s for s in all_subsets(G.vertices)
        if s and all(G.has_edge(a, b) for a, b in combinations(s, 2))
    ]


def exhaustive_dismantlable(G):
    """Whether some order of dominated-vertex removals reaches one vertex."""
    memo = {}

    def reach(alive):
        if len(alive) == 1:
            return True
        if alive in memo:
            return memo[alive]
        ok = False
        for v in alive:
            nv = (G.neighbors(v) & alive) | {v}
            if any(nv <= (G.neighbors(w) & alive) | {w} for w in alive if w != v):
                if reach(alive - {v}):
                    ok = True
                    break
        memo[alive] = ok
        return ok

    return reach(frozenset(G.vertices))


@pytest.fixture
def octahedron():
    return Graph.from_edges(range(6), [(a, b) for a, b in combinations(range(6), 2) if a // 2 != b // 2])


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)

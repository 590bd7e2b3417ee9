"""Shared brute-force oracles and strategies."""

from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import strategies as st

from ergbounds.model import Graph, ModelSpec, build_matrix, sample_graph


def brute_omega(g: Graph) -> int:
    adj = g.adjacency()
    best = min(g.n, 1)
    for k in range(2, g.n + 1):
        found = any(all(adj[a, b] for a, b in combinations(s, 2))
                    for s in combinations(range(g.n), k))
        if not found:
            break
        best = k
    return best


def brute_alpha(g: Graph) -> int:
    adj = g.adjacency()
    best = min(g.n, 1)
    for k in range(2, g.n + 1):
        if not any(not any(adj[a, b] for a, b in combinations(s, 2))
                   for s in combinations(range(g.n), k)):
            break
        best = k
    return best


def brute_chi(g: Graph) -> int:
    """Smallest k admitting a proper coloring, by plain backtracking."""
    if g.n == 0:
        return 0
    nbrs = [np.flatnonzero(row) for row in g.adjacency()]

    def colorable(k):
        colors = [-1] * g.n

        def go(v):
            if v == g.n:
                return True
            used = {colors[u] for u in nbrs[v] if u < v}
            for c in range(min(k, max(colors[:v], default=-1) + 2)):
                if c not in used:
                    colors[v] = c
                    if go(v + 1):
                        return True
            colors[v] = -1
            return False

        return go(0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def seeded_graph(n, p, seed, trial=0) -> Graph:
    return sample_graph(build_matrix(ModelSpec(n=n, family="constant", p=p)), seed, trial)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def k33() -> Graph:
    return Graph.from_edges(6, [(i, j) for i, j in product(range(3), range(3, 6))])


@st.composite
def small_graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


@pytest.fixture
def c5():
    return Graph.cycle(5)

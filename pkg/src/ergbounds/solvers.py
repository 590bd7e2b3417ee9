"""Clique number, independence number and chromatic number.

Budgets are node counts, never wall-clock, so the same graph and budget give
the same answer on any machine. When a search runs out of budget the result
carries a certified interval instead of a value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import PreconditionError
from ._bitset import max_clique_bb, pack
from .model import Graph, complement

DEFAULT_BUDGET = 20_000_000
EXACT_CHROMATIC_MAX_N = 70
RANDOM_ORDERS = 10


@dataclass(frozen=True)
class SolveResult:
    quantity: str  # omega | alpha | chi
    value: int | None
    interval: tuple[int, int]
    witness: tuple[int, ...]
    exact: bool
    nodes: int = 0

    @property
    def lower(self) -> int:
        return self.interval[0]

    @property
    def upper(self) -> int:
        return self.interval[1]

    def to_json(self) -> dict:
        # vertices and colors are 1-based on the wire
        return {
            "quantity": self.quantity,
            "value": self.value,
            "interval": list(self.interval),
            "witness": [w + 1 for w in self.witness],
            "exact": self.exact,
            "nodes": self.nodes,
        }


@dataclass(frozen=True)
class ChromaticSandwich:
    lower: int
    upper: int
    coloring: tuple[int, ...]
    clique: tuple[int, ...]
    omega: tuple[int, int]
    alpha: tuple[int, int]
    nodes: int = 0

    @property
    def interval(self) -> tuple[int, int]:
        return self.lower, self.upper


def degeneracy_order(g: Graph) -> list[int]:
    """Smallest-last order: the last vertex removed comes first."""
    adj = g.adjacency()
    deg = adj.sum(axis=1).astype(np.int64)
    alive = np.ones(g.n, dtype=bool)
    removed = []
    big = np.iinfo(np.int64).max
    for _ in range(g.n):
        v = int(np.argmin(np.where(alive, deg, big)))
        removed.append(v)
        alive[v] = False
        deg -= adj[v]
    return removed[::-1]


def is_clique(g: Graph, vertices) -> bool:
    vs = list(vertices)
    return len(set(vs)) == len(vs) and all(
        g.has_edge(vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs)))


def is_independent(g: Graph, vertices) -> bool:
    return is_clique(complement(g), vertices)


def is_proper_coloring(g: Graph, colors) -> bool:
    return len(colors) == g.n and all(colors[i] != colors[j] for i, j in g.edges())


def _greedy_clique(nbrs: list[int], order: list[int]) -> list[int]:
    clique: list[int] = []
    cand = (1 << len(nbrs)) - 1
    for v in order:
        if cand >> v & 1:
            clique.append(v)
            cand &= nbrs[v]
    return clique


def max_clique(g: Graph, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Largest clique by coloring-bounded branch and bound.

    Vertices are relabelled in degeneracy order so that the greedy coloring
    at each node sees dense vertices first.
    """
    if g.n == 0:
        return SolveResult("omega", 0, (0, 0), (), True)
    order = degeneracy_order(g)
    adj = g.adjacency()[np.ix_(order, order)]
    nbrs = g.neighbor_sets()
    seed_clique = _greedy_clique(nbrs, order)
    size, clique, nodes, complete, ub = max_clique_bb(
        pack(adj), g.n, len(seed_clique), max(1, int(budget)))
    if len(clique):
        witness = tuple(sorted(order[int(k)] for k in clique))
    else:
        witness = tuple(sorted(seed_clique))
    if complete:
        return SolveResult("omega", int(size), (int(size), int(size)), witness, True, int(nodes))
    return SolveResult("omega", None, (len(witness), int(ub)), witness, False, int(nodes))


def independence_number(g: Graph, budget: int = DEFAULT_BUDGET) -> SolveResult:
    r = max_clique(complement(g), budget)
    return SolveResult("alpha", r.value, r.interval, r.witness, r.exact, r.nodes)


def greedy_coloring(g: Graph, order) -> SolveResult:
    """First-fit coloring in ``order``; each vertex takes the lowest free color."""
    order = [int(v) for v in order]
    if sorted(order) != list(range(g.n)):
        raise PreconditionError("order must be a permutation of the vertices")
    nbrs = g.neighbor_sets()
    classes: list[int] = []
    colors = [0] * g.n
    for v in order:
        for c, members in enumerate(classes):
            if not members & nbrs[v]:
                classes[c] |= 1 << v
                colors[v] = c
                break
        else:
            colors[v] = len(classes)
            classes.append(1 << v)
    k = len(classes)
    return SolveResult("chi", k, (min(g.n, 1), k), tuple(colors), False)


def chromatic_sandwich(g: Graph, budget: int = DEFAULT_BUDGET, seed: int = 0) -> ChromaticSandwich:
    """Certified bracket on the chromatic number.

    lower = max(best clique, ceil(n / alpha_upper)) where alpha_upper is the
    certified upper end of the independence number search on this budget;
    upper = best first-fit coloring over the degeneracy order and
    ``RANDOM_ORDERS`` seeded random orders.
    """
    n = g.n
    if n == 0:
        return ChromaticSandwich(0, 0, (), (), (0, 0), (0, 0))
    om = max_clique(g, budget)
    al = independence_number(g, budget)
    lower = max(om.lower, -(-n // al.upper))
    best = greedy_coloring(g, degeneracy_order(g))
    gen = np.random.Generator(np.random.Philox(key=seed & ((1 << 64) - 1)))
    for _ in range(RANDOM_ORDERS):
        if best.value == lower:
            break
        cand = greedy_coloring(g, gen.permutation(n))
        if cand.value < best.value:
            best = cand
    return ChromaticSandwich(lower, best.value, best.witness, om.witness,
                             om.interval, al.interval, om.nodes + al.nodes)


class _OutOfBudget(Exception):
    pass


@dataclass
class _Search:
    budget: int
    nodes: int = 0


def _k_coloring(nbrs: list[int], k: int, clique, state: _Search) -> list[int] | None:
    """DSATUR backtracking for a proper k-coloring, or None if none exists."""
    n = len(nbrs)
    full = (1 << k) - 1
    colors = [-1] * n
    forbidden = [0] * n
    deg = [x.bit_count() for x in nbrs]
    uncolored = set(range(n))

    def paint(v, c):
        colors[v] = c
        uncolored.discard(v)
        bit = 1 << c
        changed = []
        x = nbrs[v]
        while x:
            low = x & -x
            u = low.bit_length() - 1
            x ^= low
            if colors[u] < 0 and not forbidden[u] & bit:
                forbidden[u] |= bit
                changed.append(u)
        return changed

    def unpaint(v, c, changed):
        colors[v] = -1
        uncolored.add(v)
        bit = 1 << c
        for u in changed:
            forbidden[u] &= ~bit

    for c, v in enumerate(clique):
        if c >= k:
            return None
        paint(v, c)

    def solve(top):
        if not uncolored:
            return True
        state.nodes += 1
        if state.nodes > state.budget:
            raise _OutOfBudget
        v = max(uncolored, key=lambda u: (forbidden[u].bit_count(), deg[u], -u))
        avail = full & ~forbidden[v]
        for c in range(min(k, top + 1)):
            if not avail >> c & 1:
                continue
            changed = paint(v, c)
            if all(forbidden[u] != full for u in changed) and solve(max(top, c + 1)):
                return True
            unpaint(v, c, changed)
        return False

    return list(colors) if solve(len(clique)) else None


def chromatic_exact(g: Graph, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Exact chromatic number by iterative deepening from the sandwich's lower end.

    Exactness is attempted for n <= 70 or when the sandwich is already
    tight; otherwise the sandwich is returned as an interval.
    """
    s = chromatic_sandwich(g, budget)
    if s.lower == s.upper:
        return SolveResult("chi", s.upper, s.interval, s.coloring, True, s.nodes)
    if g.n > EXACT_CHROMATIC_MAX_N:
        return SolveResult("chi", None, s.interval, s.coloring, False, s.nodes)
    nbrs = g.neighbor_sets()
    state = _Search(budget)
    for k in range(s.lower, s.upper):
        try:
            colors = _k_coloring(nbrs, k, s.clique, state)
        except _OutOfBudget:
            return SolveResult("chi", None, (k, s.upper), s.coloring, False, s.nodes + state.nodes)
        if colors is not None:
            return SolveResult("chi", k, (k, k), tuple(colors), True, s.nodes + state.nodes)
    return SolveResult("chi", s.upper, (s.upper, s.upper), s.coloring, True, s.nodes + state.nodes)


def solve(g: Graph, what: str, budget: int = DEFAULT_BUDGET):
    if what in ("clique", "omega"):
        return max_clique(g, budget)
    if what in ("independence", "alpha"):
        return independence_number(g, budget)
    if what in ("chromatic", "chi"):
        return chromatic_exact(g, budget)
    if what == "sandwich":
        s = chromatic_sandwich(g, budget)
        return SolveResult("chi", s.upper if s.lower == s.upper else None, s.interval,
                           s.coloring, s.lower == s.upper, s.nodes)
    if what == "greedy":
        return greedy_coloring(g, degeneracy_order(g))
    raise PreconditionError(f"unknown quantity {what!r}")

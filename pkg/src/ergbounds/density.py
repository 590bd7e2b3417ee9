"""Average edge-density floors and the log-average clique parameter.

``min_average_density`` is polynomial despite its set-infimum form: for a
fixed vertex i the mean of p(i, j) over |S| >= m is minimised by the m
smallest entries of row i, since adding any further entry (no smaller than
those already chosen) cannot lower the mean.

``log_average_tn`` is a dense-subgraph-type minimisation and is only solved
exactly up to a fixed enumeration size; beyond that a certified bracket is
returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, islice

import numpy as np

from . import PreconditionError
from .model import EdgeProbabilityMatrix

ENUMERATION_LIMIT = 1_000_000
_CHUNK = 1 << 15


@dataclass(frozen=True)
class DensityCertificate:
    a: float
    m: int
    p_floor: float
    witness_vertex: int
    witness_set: tuple[int, ...]
    note: str = "pointwise certificate at this n"

    def to_json(self) -> dict:
        return {"a": self.a, "m": self.m, "p_floor": self.p_floor,
                "witness_vertex": self.witness_vertex + 1,
                "witness_set": [v + 1 for v in self.witness_set], "note": self.note}


@dataclass(frozen=True)
class LogAverageResult:
    u_n: float
    k: int
    mode: str  # exact | certified-bracket
    value: float | None
    bracket: tuple[float, float] | None
    witness_set: tuple[int, ...]

    @property
    def lower(self) -> float:
        return self.value if self.mode == "exact" else self.bracket[0]

    @property
    def upper(self) -> float:
        return self.value if self.mode == "exact" else self.bracket[1]

    def to_json(self) -> dict:
        return {"u_n": self.u_n, "k": self.k, "mode": self.mode, "value": self.value,
                "bracket": None if self.bracket is None else list(self.bracket),
                "witness_set": [v + 1 for v in self.witness_set]}


def min_set_size(n: int, a: float) -> int:
    """ceil(n**a), with powers that round to within 1e-9 of an integer snapped."""
    x = n ** a
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1.0, x):
        return max(1, int(r))
    return max(1, math.ceil(x))


def min_average_density(matrix: EdgeProbabilityMatrix, a: float) -> DensityCertificate:
    """Smallest average of p(i, .) over any vertex i and set S not containing i, |S| >= n**a."""
    if not 0.0 <= a < 1.0:
        raise PreconditionError(f"a must lie in [0, 1), got {a}")
    n = matrix.n
    m = min_set_size(n, a)
    if m > n - 1:
        raise PreconditionError(f"no admissible set: ceil(n^a) = {m} > n - 1 = {n - 1}")
    dense = matrix.dense(diagonal=np.inf)
    # stable sort so ties resolve to the lowest vertex index
    order = np.argsort(dense, axis=1, kind="stable")[:, :m]
    means = np.take_along_axis(dense, order, axis=1).mean(axis=1)
    i = int(np.argmin(means))
    witness = tuple(sorted(int(j) for j in order[i]))
    return DensityCertificate(a, m, float(means[i]), i, witness)


def _neg_log(matrix: EdgeProbabilityMatrix) -> np.ndarray:
    with np.errstate(divide="ignore"):
        w = -np.log(matrix.dense(diagonal=1.0))
    return w + 0.0  # turn -0.0 from p = 1 into 0.0


def _combination_chunks(n: int, k: int):
    it = combinations(range(n), k)
    while True:
        block = list(islice(it, _CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def _exact_min(w: np.ndarray, k: int) -> tuple[float, tuple[int, ...]]:
    n = w.shape[0]
    best, best_set = math.inf, None
    pairs = list(combinations(range(k), 2))
    for block in _combination_chunks(n, k):
        totals = np.zeros(len(block))
        for a, b in pairs:
            totals += w[block[:, a], block[:, b]]
        i = int(np.argmin(totals))
        if best_set is None or totals[i] < best:
            best, best_set = float(totals[i]), tuple(int(v) for v in block[i])
    # report with the same summation as the bracket path so the two agree bitwise
    return _set_total(w, best_set) / len(pairs), best_set


def _set_total(w: np.ndarray, s) -> float:
    idx = np.asarray(s)
    return float(w[np.ix_(idx, idx)].sum() / 2.0)


def _local_search(w: np.ndarray, k: int, seeds: int = 8) -> tuple[float, tuple[int, ...]]:
    """Greedy growth from the cheapest pairs, then 1-swap descent."""
    n = w.shape[0]
    finite = w[np.isfinite(w)]
    # zero-probability pairs get a large finite weight so the arithmetic stays
    # well defined; the final total is recomputed with the true weights
    big = 1e6 * (float(finite.max()) + 1.0) if finite.size else 1.0
    true_w, w = w, np.where(np.isfinite(w), w, big)
    upper_idx = np.triu_indices(n, 1)
    pair_vals = w[upper_idx]
    starts = np.argsort(pair_vals, kind="stable")[:seeds]
    best, best_set = math.inf, None
    for e in starts:
        members = [int(upper_idx[0][e]), int(upper_idx[1][e])]
        inside = np.zeros(n, dtype=bool)
        inside[members] = True
        cost = w[:, members].sum(axis=1)
        while len(members) < k:
            cand = np.where(inside, np.inf, cost)
            v = int(np.argmin(cand))
            members.append(v)
            inside[v] = True
            cost += w[:, v]
        # 1-swap descent: cost[v] is the total weight from v to the current set
        improved = True
        while improved:
            improved = False
            out_cost = np.where(inside, np.inf, cost)
            for u in sorted(members):
                # swapping u out for v changes the total by cost[v] - w[u, v] - cost[u]
                delta = out_cost - w[u] - cost[u]
                v = int(np.argmin(delta))
                if delta[v] < -1e-12 * max(1.0, abs(cost[u])):
                    members.remove(u)
                    members.append(v)
                    inside[u], inside[v] = False, True
                    cost += w[:, v] - w[:, u]
                    improved = True
                    break
        total = _set_total(true_w, members)
        if best_set is None or total < best:
            best, best_set = total, tuple(sorted(members))
    return best / (k * (k - 1) / 2), best_set


def log_average_tn(matrix: EdgeProbabilityMatrix, u_n: float,
                   enumeration_limit: int = ENUMERATION_LIMIT) -> LogAverageResult:
    """min over |S| = floor(u_n) of the mean of log(1/p(i,j)) over pairs in S.

    Zero probabilities give infinite pair weights; a value of ``inf`` means
    every candidate set contains a zero-probability pair.
    """
    k = math.floor(u_n)
    n = matrix.n
    if k < 2:
        raise PreconditionError(f"floor(u_n) must be >= 2, got {k}")
    if k > n:
        raise PreconditionError(f"set size floor(u_n) = {k} exceeds n = {n}")
    w = _neg_log(matrix)
    if math.comb(n, k) <= enumeration_limit:
        value, witness = _exact_min(w, k)
        return LogAverageResult(float(u_n), k, "exact", value, None, witness)
    npairs = k * (k - 1) // 2
    smallest = np.partition(w[np.triu_indices(n, 1)], npairs - 1)[:npairs]
    lower = float(smallest.sum() / npairs)
    upper, witness = _local_search(w, k)
    return LogAverageResult(float(u_n), k, "certified-bracket", None, (lower, upper), witness)

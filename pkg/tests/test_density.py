import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ergbounds import PreconditionError
from ergbounds.density import log_average_tn, min_average_density, min_set_size
from ergbounds.model import EdgeProbabilityMatrix


def random_matrix(n, seed, low=0.0):
    gen = np.random.default_rng(seed)
    return EdgeProbabilityMatrix(n, gen.uniform(low, 1.0, n * (n - 1) // 2))


def brute_density(matrix, a):
    d = matrix.dense()
    n = matrix.n
    m = min_set_size(n, a)
    best = math.inf
    for i in range(n):
        others = [j for j in range(n) if j != i]
        for size in range(m, n):
            for s in combinations(others, size):
                best = min(best, sum(d[i, j] for j in s) / size)
    return best


def brute_log_average(matrix, k):
    d = matrix.dense()
    best = math.inf
    for s in combinations(range(matrix.n), k):
        pairs = list(combinations(s, 2))
        with np.errstate(divide="ignore"):
            val = sum(-math.log(d[i, j]) if d[i, j] > 0 else math.inf for i, j in pairs)
        best = min(best, val / len(pairs))
    return best


def test_constant_floor():
    m = EdgeProbabilityMatrix(7, np.full(21, 0.3))
    for a in (0.0, 0.3, 0.7):
        assert min_average_density(m, a).p_floor == pytest.approx(0.3, rel=1e-9)


def test_worked_example():
    d = np.full((5, 5), 0.9)
    d[0, 1:] = d[1:, 0] = [0.1, 0.2, 0.9, 0.9]
    np.fill_diagonal(d, 0)
    m = EdgeProbabilityMatrix.from_dense(d)
    c = min_average_density(m, math.log(2) / math.log(5))
    assert c.m == 2
    assert c.p_floor == pytest.approx(0.15, rel=1e-12)
    assert c.witness_vertex == 0 and c.witness_set == (1, 2)
    assert c.p_floor == pytest.approx(brute_density(m, math.log(2) / math.log(5)), rel=1e-12)


def test_singleton_sets_give_min_entry():
    m = random_matrix(9, 4)
    assert min_average_density(m, 0.0).p_floor == m.upper.min()


@pytest.mark.parametrize("seed", range(25))
def test_density_brute_force(seed):
    gen = np.random.default_rng(1000 + seed)
    n = int(gen.integers(3, 9))
    m = random_matrix(n, seed)
    a = float(gen.uniform(0, math.log(n - 1) / math.log(n)))
    c = min_average_density(m, a)
    assert c.p_floor == pytest.approx(brute_density(m, a), rel=1e-9)
    d = m.dense()
    assert len(c.witness_set) == c.m and c.witness_vertex not in c.witness_set
    assert np.mean([d[c.witness_vertex, j] for j in c.witness_set]) == pytest.approx(c.p_floor, rel=1e-9)


def test_no_admissible_set():
    with pytest.raises(PreconditionError):
        min_average_density(random_matrix(4, 0), 0.99)


def test_log_average_constant():
    m = EdgeProbabilityMatrix(8, np.full(28, 0.4))
    r = log_average_tn(m, 4.7)
    assert r.mode == "exact" and r.k == 4
    assert r.value == pytest.approx(math.log(1 / 0.4), rel=1e-9)


def test_log_average_n6_k3():
    m = random_matrix(6, 2024)
    r = log_average_tn(m, 3)
    assert math.comb(6, 3) == 20
    assert r.value == pytest.approx(brute_log_average(m, 3), rel=1e-9)


@pytest.mark.parametrize("seed", range(20))
def test_bracket_contains_exact(seed):
    gen = np.random.default_rng(seed)
    n = int(gen.integers(6, 13))
    k = int(gen.integers(2, 6))
    m = random_matrix(n, seed, low=0.01)
    exact = log_average_tn(m, k)
    brk = log_average_tn(m, k, enumeration_limit=0)
    assert brk.mode == "certified-bracket"
    assert brk.lower <= exact.value * (1 + 1e-12)
    assert exact.value <= brk.upper * (1 + 1e-12)


def test_large_bracket():
    r = log_average_tn(random_matrix(60, 5, low=0.05), 10.5)
    assert r.mode == "certified-bracket" and r.k == 10
    assert r.lower <= r.upper
    assert len(r.witness_set) == 10


def test_zero_probabilities():
    d = np.zeros((4, 4))
    m = EdgeProbabilityMatrix.from_dense(d)
    assert log_average_tn(m, 2).value == math.inf


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 27), st.floats(0.0, 1.0))
def test_monotone_in_entries(seed, e, bump):
    m = random_matrix(8, seed, low=0.01)
    up = m.upper.copy()
    up[e] = max(up[e], bump)
    m2 = EdgeProbabilityMatrix(8, up)
    for a in (0.0, 0.5):
        assert min_average_density(m2, a).p_floor >= min_average_density(m, a).p_floor
    assert log_average_tn(m2, 3).value <= log_average_tn(m, 3).value * (1 + 1e-12)


def test_u_n_validation():
    m = random_matrix(5, 1)
    with pytest.raises(PreconditionError):
        log_average_tn(m, 1.9)
    with pytest.raises(PreconditionError):
        log_average_tn(m, 6)

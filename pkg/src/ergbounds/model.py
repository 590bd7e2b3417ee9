"""Edge-probability models and reproducible graph sampling."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import FormatError, PreconditionError, rng

FAMILIES = ("constant", "power-law-sparse", "near-complete", "explicit")


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@lru_cache(maxsize=64)
def _triu(n: int) -> tuple[np.ndarray, np.ndarray]:
    iu, ju = np.triu_indices(n, 1)
    return _frozen(iu), _frozen(ju)


def n_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Canonical (lexicographic) index of the 0-based pair i < j."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got ({i}, {j}) with n={n}")
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class ModelSpec:
    """Declarative edge-probability family.

    ``power-law-sparse`` has p_n = n**-theta1, ``near-complete`` has
    p_n = 1 - n**-theta2, ``constant`` has p_n = p, ``explicit`` carries a
    full symmetric matrix.
    """

    n: int
    family: str
    p: float | None = None
    theta1: float | None = None
    theta2: float | None = None
    matrix: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise PreconditionError(f"n must be an integer >= 2, got {self.n!r}")
        slots = {"constant": "p", "power-law-sparse": "theta1",
                 "near-complete": "theta2", "explicit": "matrix"}
        used = slots[self.family]
        for name in ("p", "theta1", "theta2", "matrix"):
            value = getattr(self, name)
            if name == used and value is None:
                raise PreconditionError(f"family {self.family} needs {name}")
            if name != used and value is not None:
                raise PreconditionError(f"family {self.family} does not use {name}")
        if self.family == "constant" and not 0.0 < self.p < 1.0:
            raise PreconditionError(f"constant family needs 0 < p < 1, got {self.p}")
        if self.family == "power-law-sparse" and not self.theta1 > 0.0:
            raise PreconditionError(f"theta1 must be > 0, got {self.theta1}")
        if self.family == "near-complete" and not self.theta2 > 0.0:
            raise PreconditionError(f"theta2 must be > 0, got {self.theta2}")
        if self.family == "explicit":
            m = self.matrix
            if len(m) != self.n or any(len(row) != self.n for row in m):
                raise PreconditionError(f"explicit matrix must be {self.n}x{self.n}")
            object.__setattr__(self, "matrix", tuple(tuple(float(x) for x in row) for row in m))

    @property
    def p_n(self) -> float:
        """The family's edge probability at this n (not defined for explicit)."""
        n = self.n
        if self.family == "constant":
            return float(self.p)
        if self.family == "power-law-sparse":
            return n ** (-self.theta1)
        if self.family == "near-complete":
            return 1.0 - n ** (-self.theta2)
        raise PreconditionError("explicit models have no single p_n")

    @property
    def exponent(self) -> float | None:
        return {"power-law-sparse": self.theta1, "near-complete": self.theta2}.get(self.family)

    def with_n(self, n: int) -> ModelSpec:
        if self.family == "explicit":
            raise PreconditionError("cannot rescale an explicit matrix")
        return ModelSpec(n=n, family=self.family, p=self.p, theta1=self.theta1, theta2=self.theta2)

    def params_label(self) -> str:
        if self.family == "constant":
            return f"p={self.p!r}"
        if self.family == "power-law-sparse":
            return f"theta1={self.theta1!r}"
        if self.family == "near-complete":
            return f"theta2={self.theta2!r}"
        return "matrix"

    def to_json(self) -> dict:
        out: dict = {"n": int(self.n), "family": self.family}
        for name in ("p", "theta1", "theta2"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        if self.matrix is not None:
            out["matrix"] = [list(row) for row in self.matrix]
        return out

    @classmethod
    def from_json(cls, data: dict) -> ModelSpec:
        if not isinstance(data, dict) or "n" not in data or "family" not in data:
            raise FormatError("model JSON needs 'n' and 'family'")
        extra = set(data) - {"n", "family", "p", "theta1", "theta2", "matrix"}
        if extra:
            raise FormatError(f"unknown model keys: {sorted(extra)}")
        matrix = data.get("matrix")
        if matrix is not None:
            matrix = tuple(tuple(row) for row in matrix)
        return cls(n=data["n"], family=data["family"], p=data.get("p"),
                   theta1=data.get("theta1"), theta2=data.get("theta2"), matrix=matrix)


@dataclass(frozen=True, eq=False)
class EdgeProbabilityMatrix:
    """Symmetric per-pair probabilities; ``upper`` is in canonical pair order."""

    n: int
    upper: np.ndarray

    def __post_init__(self):
        upper = np.asarray(self.upper, dtype=np.float64)
        if upper.shape != (n_pairs(self.n),):
            raise PreconditionError(f"expected {n_pairs(self.n)} pair entries, got {upper.shape}")
        if not np.all((upper >= 0.0) & (upper <= 1.0)):
            raise PreconditionError("edge probabilities must lie in [0, 1]")
        object.__setattr__(self, "upper", _frozen(upper))

    def entry(self, i: int, j: int) -> float:
        if i == j:
            raise ValueError("diagonal entries are undefined")
        if i > j:
            i, j = j, i
        return float(self.upper[pair_index(i, j, self.n)])

    def dense(self, diagonal: float = 0.0) -> np.ndarray:
        m = np.full((self.n, self.n), diagonal, dtype=np.float64)
        iu = _triu(self.n)
        m[iu] = self.upper
        m[(iu[1], iu[0])] = self.upper
        return m

    def __eq__(self, other):
        if not isinstance(other, EdgeProbabilityMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.upper, other.upper)

    def __hash__(self):
        return hash((self.n, self.upper.tobytes()))

    @classmethod
    def from_dense(cls, m) -> EdgeProbabilityMatrix:
        m = np.asarray(m, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise PreconditionError("matrix must be square")
        n = m.shape[0]
        if n < 2:
            raise PreconditionError("need n >= 2")
        if not np.array_equal(m, m.T):
            i, j = np.argwhere(m != m.T)[0]
            raise PreconditionError(
                f"matrix is not symmetric: entry({i + 1},{j + 1}) != entry({j + 1},{i + 1})")
        return cls(n, m[_triu(n)])


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``mask[e]`` says whether canonical pair ``e`` is an edge. JSON uses
    1-based labels.
    """

    n: int
    mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != (n_pairs(self.n),):
            raise ValueError(f"mask must have {n_pairs(self.n)} entries")
        object.__setattr__(self, "mask", _frozen(mask))

    @classmethod
    def from_edges(cls, n: int, edges) -> Graph:
        mask = np.zeros(n_pairs(n), dtype=bool)
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at {i}")
            if i > j:
                i, j = j, i
            mask[pair_index(i, j, n)] = True
        return cls(n, mask)

    @classmethod
    def from_adjacency(cls, adj) -> Graph:
        adj = np.asarray(adj, dtype=bool)
        n = adj.shape[0]
        if adj.shape != (n, n) or not np.array_equal(adj, adj.T) or adj.diagonal().any():
            raise ValueError("adjacency must be square, symmetric and irreflexive")
        return cls(n, adj[_triu(n)])

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, np.ones(n_pairs(n), dtype=bool))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, np.zeros(n_pairs(n), dtype=bool))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @property
    def num_edges(self) -> int:
        return int(self.mask.sum())

    def edges(self) -> Iterator[tuple[int, int]]:
        iu, ju = _triu(self.n)
        for e in np.flatnonzero(self.mask):
            yield int(iu[e]), int(ju[e])

    def adjacency(self) -> np.ndarray:
        """Read-only boolean adjacency matrix (computed once per graph)."""
        a = self.__dict__.get("_adj")
        if a is None:
            a = np.zeros((self.n, self.n), dtype=bool)
            iu = _triu(self.n)
            a[iu] = self.mask
            a[(iu[1], iu[0])] = self.mask
            a = _frozen(a)
            object.__setattr__(self, "_adj", a)
        return a

    def neighbor_sets(self) -> list[int]:
        """Adjacency as Python-int bitsets, bit v set in entry u iff uv is an edge."""
        packed = np.packbits(self.adjacency(), axis=1, bitorder="little")
        return [int.from_bytes(row.tobytes(), "little") for row in packed]

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        if i > j:
            i, j = j, i
        return bool(self.mask[pair_index(i, j, self.n)])

    def degrees(self) -> np.ndarray:
        return self.adjacency().sum(axis=1)

    def induced(self, vertices: Sequence[int]) -> Graph:
        vs = list(vertices)
        return Graph.from_adjacency(self.adjacency()[np.ix_(vs, vs)])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash((self.n, self.mask.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges})"

    def to_json(self) -> dict:
        return {"n": int(self.n), "edges": [[i + 1, j + 1] for i, j in self.edges()]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        if not isinstance(data, dict) or set(data) != {"n", "edges"}:
            raise FormatError("graph JSON must have exactly the keys 'n' and 'edges'")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise FormatError(f"n must be a positive integer, got {n!r}")
        mask = np.zeros(n_pairs(n), dtype=bool)
        prev = None
        for entry in data["edges"]:
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in entry)):
                raise FormatError(f"edge entries must be [i, j] integer pairs, got {entry!r}")
            i, j = entry
            if i == j:
                raise FormatError(f"self-loop [{i}, {j}] violates irreflexivity")
            if i > j:
                raise FormatError(f"edge [{i}, {j}] is not in canonical form i < j")
            if i < 1 or j > n:
                raise FormatError(f"edge [{i}, {j}] out of range 1..{n}")
            if prev is not None and (i, j) <= prev:
                raise FormatError(f"edges must be sorted and unique, [{i}, {j}] after {list(prev)}")
            prev = (i, j)
            mask[pair_index(i - 1, j - 1, n)] = True
        return cls(n, mask)


@dataclass(frozen=True)
class AlphaExponents:
    """Finite-n proxies for the decay exponents of p_n and 1 - p_n."""

    alpha1: float
    alpha2: float
    n: int
    p_n: float
    source: str = field(default="pointwise")

    def to_json(self) -> dict:
        return {"alpha1": self.alpha1, "alpha2": self.alpha2, "n": self.n,
                "p_n": self.p_n, "source": self.source}


def build_matrix(spec: ModelSpec) -> EdgeProbabilityMatrix:
    n = spec.n
    if spec.family == "explicit":
        return EdgeProbabilityMatrix.from_dense(np.array(spec.matrix, dtype=np.float64))
    p_n = spec.p_n
    if not 0.0 < p_n < 1.0:
        raise PreconditionError(f"p_n = {p_n!r} falls outside (0, 1) at n={n}")
    return EdgeProbabilityMatrix(n, np.full(n_pairs(n), p_n))


def sample_graph(matrix: EdgeProbabilityMatrix, seed: int, trial: int = 0) -> Graph:
    """Draw G(n, p): pair e is open iff uniform(seed, trial, e) < p(e)."""
    u = rng.uniforms(seed, trial, n_pairs(matrix.n))
    return Graph(matrix.n, u < matrix.upper)


def complement(g: Graph) -> Graph:
    return Graph(g.n, ~g.mask)


def alpha_exponents(spec: ModelSpec, p_n: float | None = None) -> AlphaExponents:
    """Pointwise ratios log(1/p_n)/log n and log(1/(1-p_n))/log n.

    The limsup over n is replaced by its value at ``spec.n``. Explicit
    matrices need ``p_n`` supplied (typically a density floor).
    """
    if p_n is None:
        p_n = spec.p_n
    alpha1, alpha2 = decay_exponents(p_n, spec.n)
    # the power law cancels exactly; avoid the rounding of the float ratio
    if spec.family == "power-law-sparse":
        alpha1 = float(spec.theta1)
    elif spec.family == "near-complete":
        alpha2 = float(spec.theta2)
    return AlphaExponents(alpha1, alpha2, spec.n, p_n, "pointwise")


def decay_exponents(p_n: float, n: float) -> tuple[float, float]:
    """(log(1/p_n)/log n, log(1/(1-p_n))/log n) for real n > 1."""
    if not n > 1:
        raise PreconditionError(f"need n > 1, got {n!r}")
    if not 0.0 < p_n < 1.0:
        raise PreconditionError(f"alpha exponents need 0 < p_n < 1, got {p_n!r}")
    log_n = math.log(n)
    return -math.log(p_n) / log_n, -math.log1p(-p_n) / log_n


def limiting_alphas(spec: ModelSpec, p_n: float | None = None) -> AlphaExponents:
    """Exponents as limits over n for the closed-form families.

    constant -> (0, 0), power-law-sparse -> (theta1, 0), near-complete with
    theta2 > 0 -> (0, theta2). Explicit matrices fall back to the pointwise
    proxy.
    """
    if spec.family == "explicit":
        return alpha_exponents(spec, p_n)
    p = spec.p_n
    if spec.family == "constant":
        return AlphaExponents(0.0, 0.0, spec.n, p, "family-limit")
    if spec.family == "power-law-sparse":
        return AlphaExponents(float(spec.theta1), 0.0, spec.n, p, "family-limit")
    return AlphaExponents(0.0, float(spec.theta2), spec.n, p, "family-limit")


def load_model(path) -> ModelSpec:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON ({exc})") from exc
    return ModelSpec.from_json(data)

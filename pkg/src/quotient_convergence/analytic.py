"""Analytic limit objects and certified finite nets of their quotient sets.

``Q_k`` of the truncated Lebesgue function or of a step-graphon cut
function is a continuum.  A :class:`CertifiedNet` is a finite subset of it
(every net point is a genuine quotient) together with a radius within which
every true quotient lies.  Hausdorff distances to the true set are therefore
``distance to net +/- error_bound``.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import (
    MAX_GROUND,
    BudgetError,
    DomainError,
    SetFunction,
    SymmetricSetFunction,
    as_exact,
)
from .profile import DEFAULT_BUDGET, MAX_ORBIT_K, QuotientSet

PROB_TOL = 1e-12


@dataclass(frozen=True)
class TruncatedLebesgue:
    """``X -> min(lambda(X), c)`` on the Borel sets of ``[0, 1]``."""

    c: object

    def __post_init__(self):
        c = as_exact(self.c)
        if not 0 < c < 1:
            raise DomainError(f"truncation level must lie in (0, 1), got {c}")
        object.__setattr__(self, "c", c)

    def quotient(self, p: Sequence) -> tuple:
        return lambda_c_quotient(p, self.c)

    def net(self, k: int, m: int, **kw) -> "CertifiedNet":
        return lambda_c_net(k, self.c, m, **kw)

    def dyadic(self, depth: int) -> SymmetricSetFunction:
        return dyadic_quotient(self.c, depth)


def _check_probability(p: Sequence) -> list:
    p = [as_exact(x) for x in p]
    if any(x < 0 for x in p):
        raise DomainError("probability vector has a negative entry")
    s = sum(p)
    exact = all(not isinstance(x, float) for x in p)
    if (exact and s != 1) or (not exact and abs(s - 1) > PROB_TOL):
        raise DomainError(f"probability vector sums to {s}, not 1")
    return p


def _subset_sums(p: Sequence) -> list:
    sums = [0]
    for x in p:
        sums += [t + x for t in sums]
    return sums


def lambda_c_quotient(p: Sequence, c) -> tuple:
    """Quotient of ``lambda_c`` by a partition of ``[0,1]`` into parts of measure ``p``."""
    p = _check_probability(p)
    c = as_exact(c)
    return tuple(min(t, c) for t in _subset_sums(p))


def compositions(m: int, k: int):
    """All ``k``-tuples of nonnegative integers summing to ``m``."""
    for cuts in itertools.combinations(range(m + k - 1), k - 1):
        prev = -1
        parts = []
        for c in cuts:
            parts.append(c - prev - 1)
            prev = c
        parts.append(m + k - 2 - prev)
        yield tuple(parts)


@dataclass(frozen=True)
class CertifiedNet:
    quotient_set: QuotientSet
    net_resolution: float
    error_bound: float

    def sidecar_json(self) -> str:
        return json.dumps({"resolution": self.net_resolution, "error_bound": self.error_bound})


def lambda_c_net(k: int, c, m: int, budget: int = DEFAULT_BUDGET) -> CertifiedNet:
    """Net of ``Q_k(lambda_c)`` from measure vectors on the grid ``(1/m) Z``.

    Any probability vector rounds (largest remainder) to a grid vector with
    every entry off by less than ``1/m``, so within ``k/m`` in the sum metric.
    ``min(., c)`` is 1-Lipschitz, so each coordinate moves by at most ``k/m``
    and the Euclidean error is at most ``(k/m) * sqrt(2^k)``.
    """
    if not 1 <= k <= MAX_ORBIT_K:
        raise DomainError(f"k must lie in [1, {MAX_ORBIT_K}]")
    if m < 1:
        raise DomainError("grid size m must be positive")
    count = math.comb(m + k - 1, k - 1)
    if count > budget:
        raise BudgetError(f"compositions of {m} into {k} parts", count, budget)
    c = as_exact(c)
    vecs = []
    for parts in compositions(m, k):
        if list(parts) != sorted(parts, reverse=True):
            continue  # other orderings are relabelings
        vecs.append(lambda_c_quotient([Fraction(x, m) for x in parts], c))
    delta = k / m
    return CertifiedNet(QuotientSet.from_vectors(k, vecs), delta, delta * math.sqrt(2**k))


def dyadic_quotient(c, depth: int) -> SymmetricSetFunction:
    """``lambda_c`` quotiented by the ``2^depth`` equal dyadic intervals."""
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    c = as_exact(c)
    n = 1 << depth
    step = Fraction(1, n) if not isinstance(c, float) else 1.0 / n
    return SymmetricSetFunction(n, tuple(min(s * step, c) for s in range(n + 1)))


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple
    meta: dict = None

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise DomainError(f"edge ({u}, {v}) has an endpoint outside [0, {self.num_vertices})")
        object.__setattr__(self, "edges", edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and (self.num_vertices, self.edges) == (other.num_vertices, other.edges)

    def __hash__(self):
        return hash((self.num_vertices, self.edges))


def graph_cut_setfunction(G: Graph) -> SetFunction:
    """``X -> e(X, V - X) / |V|^2`` as an exact table."""
    n = G.num_vertices
    if n > MAX_GROUND:
        raise BudgetError("table size 2^|V|", 1 << n, 1 << MAX_GROUND)
    if n == 0:
        return SetFunction(0, (0,))
    denom = n * n
    masks = [(1 << u, 1 << v) for u, v in G.edges if u != v]
    vals = []
    for X in range(1 << n):
        cut = sum(1 for a, b in masks if bool(X & a) != bool(X & b))
        vals.append(Fraction(cut, denom))
    return SetFunction(n, tuple(vals))


@dataclass(frozen=True)
class StepGraphon:
    """Graphon constant ``values[i][j]`` on step rectangles of widths ``weights``."""

    weights: tuple
    values: tuple

    def __post_init__(self):
        w = tuple(as_exact(x) for x in self.weights)
        W = tuple(tuple(as_exact(x) for x in row) for row in self.values)
        q = len(w)
        if q == 0 or any(x <= 0 for x in w):
            raise DomainError("step weights must be positive")
        exact = all(not isinstance(x, float) for x in w)
        s = sum(w)
        if (exact and s != 1) or (not exact and abs(s - 1) > PROB_TOL):
            raise DomainError(f"step weights sum to {s}, not 1")
        if len(W) != q or any(len(row) != q for row in W):
            raise DomainError("graphon matrix must be q x q")
        for i in range(q):
            for j in range(q):
                if not 0 <= W[i][j] <= 1:
                    raise DomainError("graphon values must lie in [0, 1]")
                if W[i][j] != W[j][i]:
                    raise DomainError("graphon matrix must be symmetric")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "values", W)

    @property
    def q(self) -> int:
        return len(self.weights)

    @property
    def max_value(self):
        return max(max(row) for row in self.values)

    @classmethod
    def constant(cls, w) -> "StepGraphon":
        return cls((1,), ((w,),))

    def W(self, x: float, y: float):
        """Pointwise value, for integration oracles."""
        return self.values[self._step(x)][self._step(y)]

    def _step(self, x: float) -> int:
        acc = 0
        for i, w in enumerate(self.weights):
            acc += w
            if x < acc:
                return i
        return self.q - 1


def _check_alloc(W: StepGraphon, alloc) -> list:
    alloc = [[as_exact(x) for x in row] for row in alloc]
    if len(alloc) != W.q:
        raise DomainError(f"allocation needs {W.q} rows")
    k = len(alloc[0])
    for row in alloc:
        if len(row) != k:
            raise DomainError("ragged allocation matrix")
        if any(not 0 <= x <= 1 for x in row):
            raise DomainError("allocation entries must lie in [0, 1]")
        s = sum(row)
        exact = all(not isinstance(x, float) for x in row)
        if (exact and s != 1) or (not exact and abs(s - 1) > PROB_TOL):
            raise DomainError(f"allocation row sums to {s}, not 1")
    return alloc


def step_graphon_cut_quotient(W: StepGraphon, alloc) -> tuple:
    """Cut quotient for a partition putting fraction ``alloc[i][l]`` of step ``i`` into block ``l``.

    Coordinate ``A`` is ``sum_ij W_ij m_i(A) (w_j - m_j(A))`` with
    ``m_i(A) = w_i * sum_{l in A} alloc[i][l]``; this is exact because the
    integrand is constant on each step rectangle.
    """
    alloc = _check_alloc(W, alloc)
    k = len(alloc[0])
    w, V = W.weights, W.values
    q = W.q
    per_step = [_subset_sums([w[i] * a for a in alloc[i]]) for i in range(q)]
    out = []
    for A in range(1 << k):
        m = [per_step[i][A] for i in range(q)]
        out.append(sum(V[i][j] * m[i] * (w[j] - m[j]) for i in range(q) for j in range(q)))
    return tuple(out)


def step_graphon_lipschitz(W: StepGraphon):
    """Lipschitz constant of each cut coordinate in the masses ``m`` (sum metric).

    ``d/dm_i sum_ij W_ij m_i (w_j - m_j) = sum_j W_ij (w_j - 2 m_j)`` (``W``
    symmetric), and ``|w_j - 2 m_j| <= w_j``, so the gradient is bounded by
    ``max W * sum_j w_j = max W``.
    """
    return W.max_value


def step_graphon_net(W: StepGraphon, k: int, m: int, budget: int = DEFAULT_BUDGET) -> CertifiedNet:
    """Net of ``Q_k(rho_W)`` from allocation rows on the grid ``(1/m) Z``.

    Rounding each row moves it by less than ``k/m`` in the sum metric, so
    the masses move by less than ``sum_i w_i k/m = k/m`` in total and each
    coordinate by at most ``max W * k / m``.
    """
    if not 1 <= k <= MAX_ORBIT_K:
        raise DomainError(f"k must lie in [1, {MAX_ORBIT_K}]")
    rows = list(compositions(m, k))
    count = len(rows) ** W.q
    if count > budget:
        raise BudgetError(f"allocation grid ({len(rows)}^{W.q})", count, budget)
    exact = all(not isinstance(x, float) for x in W.weights) and all(
        not isinstance(x, float) for row in W.values for x in row
    )
    scale = (lambda x: Fraction(x, m)) if exact else (lambda x: x / m)
    grid_rows = [[scale(x) for x in r] for r in rows]
    vecs = (step_graphon_cut_quotient(W, alloc) for alloc in itertools.product(grid_rows, repeat=W.q))
    delta = k / m
    err = float(step_graphon_lipschitz(W)) * delta * math.sqrt(2**k)
    return CertifiedNet(QuotientSet.from_vectors(k, vecs), delta, err)


def sample_w_random_graph(W: StepGraphon, n: int, seed: int) -> Graph:
    """W-random graph on ``n`` vertices; numpy PCG64 seeded with ``seed``."""
    if n > MAX_GROUND:
        raise BudgetError("vertex count", n, MAX_GROUND)
    rng = np.random.Generator(np.random.PCG64(seed))
    probs = np.array([float(x) for x in W.weights])
    types = rng.choice(W.q, size=n, p=probs / probs.sum())
    V = [[float(x) for x in row] for row in W.values]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < V[types[u]][types[v]]:
                edges.append((u, v))
    meta = {"generator": "numpy.PCG64", "seed": seed, "types": [int(t) for t in types]}
    return Graph(n, tuple(edges), meta)

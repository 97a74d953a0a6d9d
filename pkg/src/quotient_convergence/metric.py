"""Hausdorff distance between quotient sets and the convergence pseudometric."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence, Union

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from .core import BudgetError, DomainError
from .profile import QuotientSet, quotient_set


def as_array(points) -> np.ndarray:
    pts = sorted(points)
    return np.array([[float(x) for x in p] for p in pts], dtype=float)


def directed(S: QuotientSet, T: QuotientSet) -> float:
    """``sup_{s in S} inf_{t in T} |s - t|``.

    Both sets are relabeling invariant, so it is enough to take the sup over
    the canonical representatives of ``S`` against the full orbit of ``T``.
    """
    a = as_array(S.canonical_points())
    b = as_array(T.expanded().points)
    # scipy's early-break search; the value is exact, the seed only fixes the shuffle
    return float(directed_hausdorff(a, b, seed=0)[0])


def hausdorff(S: QuotientSet, T: QuotientSet) -> float:
    if S.k != T.k:
        raise DomainError(f"k mismatch: {S.k} vs {T.k}")
    if not len(S) or not len(T):
        raise DomainError("Hausdorff distance of an empty set")
    return max(directed(S, T), directed(T, S))


def tail_bound(width: float, k_max: int) -> float:
    """Bound on ``sum_{k > k_max} 2^-k d_H^k`` when all values lie in an interval of length ``width``.

    Every coordinate except the empty set differs by at most ``width``, so
    ``d_H^k <= width * sqrt(2^k - 1) < width * 2^(k/2)``, and the geometric
    tail sums to ``width * 2^(-(k_max+1)/2) / (1 - 2^(-1/2))``.
    """
    return width * 2.0 ** (-(k_max + 1) / 2) / (1 - 2.0**-0.5)


@dataclass
class DistanceReport:
    value: float
    tail_bound: float
    k_max: int
    per_k: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "DistanceReport":
        return cls(**json.loads(text))


Source = Union[Callable[[int], QuotientSet], Sequence[QuotientSet], object]


def _profile_source(src, budget):
    if hasattr(src, "evaluate") and hasattr(src, "symmetric"):
        return (lambda k: quotient_set(src, k, budget=budget)), src.value_range()
    if callable(src):
        return src, None
    if isinstance(src, (list, tuple)):
        by_k = {Q.k: Q for Q in src}

        def get(k):
            if k not in by_k:
                raise BudgetError(f"profile source has no Q_{k}", k, max(by_k))
            return by_k[k]

        return get, None
    raise DomainError(f"cannot produce quotient sets from {type(src).__name__}")


def pseudometric_d(f, g, k_max: int, value_range=None, budget: int = 10**7) -> DistanceReport:
    """Truncated ``sum_k 2^-k d_H^k(Q_k(f), Q_k(g))`` with an explicit tail bound.

    ``f`` and ``g`` may be set functions, callables ``k -> QuotientSet`` or
    lists of quotient sets.  For non-function sources ``value_range`` (a
    ``(lo, hi)`` pair containing every value of both) must be supplied.
    """
    if k_max < 1:
        raise DomainError("k_max must be at least 1")
    qf, rf = _profile_source(f, budget)
    qg, rg = _profile_source(g, budget)
    if value_range is None:
        if rf is None or rg is None:
            raise DomainError("value_range is required for quotient-set sources")
        value_range = (min(rf[0], rg[0], 0), max(rf[1], rg[1], 0))
    width = float(value_range[1]) - float(value_range[0])
    per_k = [hausdorff(qf(k), qg(k)) for k in range(1, k_max + 1)]
    value = math.fsum(2.0**-k * d for k, d in enumerate(per_k, start=1))
    return DistanceReport(value, tail_bound(width, k_max), k_max, per_k)

"""Enumeration of k-quotient sets with symmetry pruning.

Partitions are generated as restricted growth strings (each element goes to
an already used block or opens the next one), so every unlabeled partition
into at most ``k`` blocks is visited once.  Relabelings and empty blocks are
recovered by taking the lexicographically least vector over the ``k!``
block permutations, which is the stored representative.

Values are compared through an order-preserving integer encoding of the
function's distinct values.  This keeps deduplication exact for rationals
while letting tuple comparison run on machine integers.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .core import (
    AnySetFunction,
    BudgetError,
    DomainError,
    Partition,
    SetFunction,
    sizes_as_masks,
)

MAX_ORBIT_K = 6
DEFAULT_BUDGET = 10**7
FLOAT_GRID = 1e-9


@lru_cache(maxsize=None)
def relabel_tables(k: int) -> tuple:
    """For every permutation ``pi`` of ``[k]``, the table ``A -> pi(A)``.

    ``tuple(v[t] for t in table)`` runs over the whole relabeling orbit of a
    vector ``v`` as ``pi`` varies.  The identity comes first.
    """
    if k > MAX_ORBIT_K:
        raise BudgetError("orbit size k!", math.factorial(k), math.factorial(MAX_ORBIT_K))
    out = []
    for pi in itertools.permutations(range(k)):
        img = [0] * (1 << k)
        for A in range(1, 1 << k):
            low = A & -A
            img[A] = img[A ^ low] | 1 << pi[low.bit_length() - 1]
        out.append(tuple(img))
    return tuple(out)


def canonical(v: Sequence, k: int) -> tuple:
    """Lexicographically least relabeling of ``v``."""
    return min(tuple(v[t] for t in tab) for tab in relabel_tables(k))


def _canonical_with_perm(v: Sequence, k: int):
    best, best_tab = None, None
    for tab in relabel_tables(k):
        w = tuple(v[t] for t in tab)
        if best is None or w < best:
            best, best_tab = w, tab
    return best, best_tab


def orbit(v: Sequence, k: int) -> set:
    return {tuple(v[t] for t in tab) for tab in relabel_tables(k)}


def snap(x):
    """Exact values pass through; floats snap to the dedup grid."""
    if isinstance(x, float):
        return round(x / FLOAT_GRID) * FLOAT_GRID
    return x


@dataclass(frozen=True)
class QuotientSet:
    """Finite, relabeling-invariant set of quotient vectors in ``R^(2^k)``.

    ``points`` holds one canonical representative per orbit unless
    ``orbit_expanded`` is set, in which case it holds every orbit member.
    ``witnesses`` optionally maps a representative to a partition of the
    source ground set whose quotient equals it exactly.
    """

    k: int
    points: frozenset
    orbit_expanded: bool = False
    witnesses: dict | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        for p in self.points:
            if len(p) != 1 << self.k:
                raise DomainError(f"point of length {len(p)} in a k={self.k} set")
            if p[0] != 0:
                raise DomainError("quotient vectors vanish on the empty set")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.sorted_points())

    def sorted_points(self) -> list:
        return sorted(self.points)

    @classmethod
    def from_vectors(cls, k: int, vectors: Iterable[Sequence], witnesses=None) -> "QuotientSet":
        """Canonicalize and deduplicate arbitrary vectors.

        ``witnesses``, if given, runs parallel to ``vectors``; the first
        witness seen for each orbit is kept (relabeled to match).
        """
        pts: dict = {}
        wit_iter = iter(witnesses) if witnesses is not None else None
        for v in vectors:
            v = tuple(snap(x) for x in v)
            w = next(wit_iter) if wit_iter is not None else None
            c, tab = _canonical_with_perm(v, k)
            if c not in pts:
                pts[c] = None if w is None else _relabel_witness(w, tab, k)
        wit = pts if witnesses is not None else None
        return cls(k, frozenset(pts), False, wit)

    def expanded(self) -> "QuotientSet":
        if self.orbit_expanded:
            return self
        out = set()
        for p in self.points:
            out |= orbit(p, self.k)
        return QuotientSet(self.k, frozenset(out), True)

    def canonical_points(self) -> frozenset:
        if not self.orbit_expanded:
            return self.points
        return frozenset(canonical(p, self.k) for p in self.points)

    def __contains__(self, v):
        return contains_vector(self, v, 0)

    def issubset(self, other: "QuotientSet") -> bool:
        if self.k != other.k:
            raise DomainError(f"k mismatch: {self.k} vs {other.k}")
        return self.canonical_points() <= other.canonical_points()


def _relabel_witness(P: Partition, tab: tuple, k: int) -> Partition:
    # tab[A] = pi(A); the canonical vector w has w[A] = v[pi(A)], so block
    # pi(i) of the old labeling becomes block i
    inv = [0] * k
    for i in range(k):
        inv[tab[1 << i].bit_length() - 1] = i
    return Partition(P.n, k, tuple(inv[b] for b in P.assignment))


def contains_vector(S: QuotientSet, v: Sequence, tol: float = 0) -> bool:
    """Whether some relabeling of ``v`` is within ``tol`` of a point of ``S``."""
    if len(v) != 1 << S.k:
        raise DomainError(f"vector of length {len(v)} vs k={S.k}")
    if tol == 0:
        c = canonical(tuple(snap(x) for x in v), S.k)
        return c in S.canonical_points()
    tol2 = float(tol) ** 2
    fv = [float(x) for x in v]
    for w in orbit(fv, S.k):
        for p in S.points:
            if sum((a - float(b)) ** 2 for a, b in zip(w, p)) <= tol2:
                return True
    return False


def _value_encoding(values: Sequence):
    # order-preserving integer codes for the distinct (snapped) values
    distinct = sorted(set(snap(x) for x in values))
    code = {x: i for i, x in enumerate(distinct)}
    return [code[snap(x)] for x in values], distinct


def _rgs_prefixes(n: int, k: int, depth: int) -> list[tuple]:
    """Restricted growth strings of length ``depth`` using at most ``k`` labels."""
    out = [()]
    for _ in range(min(depth, n)):
        nxt = []
        for p in out:
            used = max(p, default=-1) + 1
            for b in range(min(used + 1, k)):
                nxt.append(p + (b,))
        out = nxt
    return out


def _enumerate_from_prefix(args):
    """Distinct raw vectors over all completions of one prefix, in DFS order."""
    codes, n, k, prefix = args
    blocks = [0] * k
    used = 0
    for e, b in enumerate(prefix):
        blocks[b] |= 1 << e
        used = max(used, b + 1)
    found: dict = {}
    start = len(prefix)

    def leaf():
        unions = [0]
        for b in blocks:
            unions += [u | b for u in unions]
        vec = tuple(codes[u] for u in unions)
        if vec not in found:
            found[vec] = tuple(blocks)

    def rec(e, used):
        if e == n:
            leaf()
            return
        bit = 1 << e
        for b in range(min(used + 1, k)):
            blocks[b] |= bit
            rec(e + 1, max(used, b + 1))
            blocks[b] ^= bit

    rec(start, used)
    return found


def quotient_set(
    f: AnySetFunction,
    k: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    witnesses: bool = False,
) -> QuotientSet:
    """All distinct quotients of ``f`` on ``[k]``, labeled blocks may be empty.

    The budget bounds ``k^n`` (the number of labeled maps) for general
    functions and the number of block-size multisets for symmetric ones.
    ``workers > 1`` splits the search over assignment prefixes; the result
    does not depend on the split.
    """
    if k < 1:
        raise DomainError("k must be at least 1")
    if k > MAX_ORBIT_K:
        raise BudgetError("orbit size k!", math.factorial(k), math.factorial(MAX_ORBIT_K))
    if f.symmetric:
        return _symmetric_quotient_set(f, k, budget, witnesses)
    if not isinstance(f, SetFunction):
        f = f.to_table()
    n = f.n
    if k**n > budget:
        raise BudgetError(f"quotient enumeration k^n (k={k}, n={n})", k**n, budget)
    codes, decode = _value_encoding(f.values)
    prefixes = _rgs_prefixes(n, k, 6 if workers > 1 else 0)
    tasks = [(codes, n, k, p) for p in prefixes]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_enumerate_from_prefix, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        parts = [_enumerate_from_prefix(t) for t in tasks]

    reps: dict = {}
    for part in parts:
        for vec, blocks in part.items():
            c, tab = _canonical_with_perm(vec, k)
            if c not in reps:
                reps[c] = (blocks, tab)
    points = {}
    for c, (blocks, tab) in reps.items():
        point = tuple(decode[x] for x in c)
        points[point] = _relabel_witness(Partition.from_blocks(n, blocks), tab, k) if witnesses else None
    return QuotientSet(k, frozenset(points), False, points if witnesses else None)


def _size_multisets(n: int, k: int):
    """Nonincreasing tuples of ``k`` nonnegative integers summing to ``n``."""
    def rec(remaining, parts_left, cap):
        if parts_left == 1:
            if remaining <= cap:
                yield (remaining,)
            return
        for s in range(min(remaining, cap), -1, -1):
            if s * parts_left < remaining:
                break
            for rest in rec(remaining - s, parts_left - 1, s):
                yield (s,) + rest
    yield from rec(n, k, n)


def _symmetric_quotient_set(f, k, budget, witnesses):
    n = f.n
    count = math.comb(n + k - 1, k - 1)
    if count > budget:
        raise BudgetError(f"block-size compositions of {n} into {k} parts", count, budget)
    h = [f.size_value(s) for s in range(n + 1)]
    vectors, wits = [], []
    for sizes in _size_multisets(n, k):
        sums = [0]
        for s in sizes:
            sums += [t + s for t in sums]
        vectors.append(tuple(h[t] for t in sums))
        if witnesses:
            wits.append(Partition.from_blocks(n, sizes_as_masks(sizes)))
    return QuotientSet.from_vectors(k, vectors, wits if witnesses else None)


def profile(f: AnySetFunction, k_max: int, **kw) -> list[QuotientSet]:
    """``[Q_1(f), ..., Q_{k_max}(f)]``."""
    if k_max < 1:
        raise DomainError("k_max must be at least 1")
    return [quotient_set(f, k, **kw) for k in range(1, k_max + 1)]


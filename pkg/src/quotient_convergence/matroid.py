"""Matroid rank oracles, minors, and the binary-matroid test.

A matroid is binary iff it has no minor isomorphic to the rank-2 uniform
matroid on four elements.  :func:`is_binary_via_Q6` searches for the
six-block quotient pattern that witnesses such a minor;
:func:`has_u24_minor_bruteforce` builds every 4-element minor explicitly
through :func:`contract` and :func:`delete`.  The two are kept separate on
purpose so that each checks the other.
"""
from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .core import (
    MAX_GROUND,
    BudgetError,
    DomainError,
    SetFunction,
    SymmetricSetFunction,
    bits,
    is_increasing,
    is_submodular,
    mask_of,
    popcount,
)
from .profile import QuotientSet, relabel_tables

MEMO_GROUND = 20
AXIOM_CHECK_GROUND = 10
BRUTEFORCE_GROUND = 14


@dataclass(frozen=True)
class RankOracle:
    """Integer rank function on subsets (bitmasks) of ``[n]``."""

    n: int
    kind: str
    params: tuple = ()
    _rank: Callable[[int], int] = field(default=None, compare=False, repr=False)

    def rank(self, X: int) -> int:
        if X < 0 or X >> self.n:
            raise DomainError(f"bitmask {X} outside ground set of size {self.n}")
        return self._rank(X)

    __call__ = rank

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def matroid_rank(self) -> int:
        return self._rank(self.full)


def _oracle(n: int, kind: str, params: tuple, fn: Callable[[int], int]) -> RankOracle:
    if n <= MEMO_GROUND:
        fn = lru_cache(maxsize=None)(fn)
    return RankOracle(n, kind, params, fn)


def check_rank_axioms(M: RankOracle) -> bool:
    """(R1) rk(0)=0, (R2) increasing, (R3) rk(X) <= |X|, (R4) submodular."""
    if M.n > MAX_GROUND:
        raise BudgetError("axiom check table 2^n", 1 << M.n, 1 << MAX_GROUND)
    table = [M.rank(X) for X in range(1 << M.n)]
    if table[0] != 0:
        return False
    if any(not isinstance(r, int) or r > popcount(X) for X, r in enumerate(table)):
        return False
    f = SetFunction(M.n, tuple(table))
    return is_increasing(f) and is_submodular(f)


def uniform_rank(n: int, r: int) -> RankOracle:
    if not 0 <= r <= n:
        raise DomainError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    return RankOracle(n, "uniform", (r,), lambda X: min(popcount(X), r))


@dataclass(frozen=True)
class SparsePavingFamily:
    """``r``-subsets of ``[n]`` pairwise meeting in at most ``r - 2`` elements."""

    n: int
    r: int
    H: frozenset = frozenset()

    def __post_init__(self):
        H = frozenset(self.H)
        object.__setattr__(self, "H", H)
        if not 0 <= self.r <= self.n:
            raise DomainError(f"need 0 <= r <= n, got r={self.r}, n={self.n}")
        if H and self.r >= self.n:
            raise DomainError("a nonempty family needs r < n")
        for A in H:
            if A >> self.n or popcount(A) != self.r:
                raise DomainError(f"member {A} is not an {self.r}-subset of [{self.n}]")
        for A, B in itertools.combinations(H, 2):
            if popcount(A & B) > self.r - 2:
                raise DomainError(f"members {A} and {B} share more than r-2 elements")


def sparse_paving_rank(family: SparsePavingFamily) -> RankOracle:
    n, r, H = family.n, family.r, family.H

    def rk(X):
        s = popcount(X)
        if s <= r - 1:
            return s
        if X in H:
            return r - 1
        return r

    M = _oracle(n, "sparse_paving", (r, tuple(sorted(H))), rk)
    if n <= AXIOM_CHECK_GROUND and not check_rank_axioms(M):
        raise DomainError("family does not define a matroid")
    return M


def random_sparse_paving_family(n: int, r: int, rng: random.Random, tries: int = 50) -> SparsePavingFamily:
    """Greedy selection among random ``r``-subsets."""
    H: list[int] = []
    for _ in range(tries):
        A = mask_of(rng.sample(range(n), r))
        if A not in H and all(popcount(A & B) <= r - 2 for B in H):
            H.append(A)
    return SparsePavingFamily(n, r, frozenset(H))


def graphic_rank(edges: Sequence[tuple[int, int]]) -> RankOracle:
    """Cycle matroid: rank of an edge set is #vertices touched minus #components."""
    edges = tuple((int(u), int(v)) for u, v in edges)
    m = len(edges)
    if m > MAX_GROUND:
        raise DomainError(f"{m} edges exceeds the cap of {MAX_GROUND}")

    def rk(F):
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for e in bits(F):
            u, v = edges[e]
            a, b = find(u), find(v)
            if a != b:
                parent[a] = b
                r += 1
        return r

    return _oracle(m, "graphic", edges, rk)


def gf2_column_rank(cols: Iterable[int]) -> int:
    """Rank over GF(2) of integer-encoded column vectors."""
    basis: dict[int, int] = {}
    for c in cols:
        while c:
            hb = c.bit_length() - 1
            if hb not in basis:
                basis[hb] = c
                break
            c ^= basis[hb]
    return len(basis)


def gf2_rank(matrix: Sequence[Sequence[int]]) -> RankOracle:
    """Column matroid of a 0/1 matrix over GF(2); ``matrix`` is a list of rows."""
    rows = [list(r) for r in matrix]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise DomainError("ragged matrix")
    if ncols > MAX_GROUND:
        raise DomainError(f"{ncols} columns exceeds the cap of {MAX_GROUND}")
    cols = tuple(sum((rows[i][j] & 1) << i for i in range(len(rows))) for j in range(ncols))

    def rk(X):
        return gf2_column_rank(cols[e] for e in bits(X))

    return _oracle(ncols, "gf2", cols, rk)


def fano_matrix() -> list[list[int]]:
    """3 x 7 matrix whose columns are the nonzero vectors of GF(2)^3."""
    return [[(j >> i) & 1 for j in range(1, 8)] for i in range(3)]


def _spread(mask: int, positions: Sequence[int]) -> int:
    out = 0
    for i in bits(mask):
        out |= 1 << positions[i]
    return out


def delete(M: RankOracle, A: int) -> RankOracle:
    """Restriction to the complement of ``A``; remaining elements keep their order."""
    if A & ~M.full:
        raise DomainError("A is not a subset of the ground set")
    if A == 0:
        return M
    keep = [e for e in range(M.n) if not A >> e & 1]
    return _oracle(len(keep), "minor", (M.kind, "delete", A), lambda X: M.rank(_spread(X, keep)))


def contract(M: RankOracle, A: int) -> RankOracle:
    """``X -> rk(X + A) - rk(A)`` on the complement of ``A``."""
    if A & ~M.full:
        raise DomainError("A is not a subset of the ground set")
    if A == 0:
        return M
    keep = [e for e in range(M.n) if not A >> e & 1]
    rA = M.rank(A)
    return _oracle(len(keep), "minor", (M.kind, "contract", A), lambda X: M.rank(_spread(X, keep) | A) - rA)


def normalize(M: RankOracle):
    """``X -> rk(X)/n`` as exact rationals; uniform matroids stay symmetric."""
    n = M.n
    if n == 0:
        raise DomainError("cannot normalize a matroid on an empty ground set")
    if M.kind == "uniform":
        r = M.params[0]
        return SymmetricSetFunction(n, tuple(Fraction(min(s, r), n) for s in range(n + 1)))
    if n > MAX_GROUND:
        raise BudgetError("table size 2^n", 1 << n, 1 << MAX_GROUND)
    return SetFunction(n, tuple(Fraction(M.rank(X), n) for X in range(1 << n)))


def _u24_pattern(rank, four: Sequence[int], J5: int) -> bool:
    # rk(union of I plus J5) - rk(J5) == min(|I|, 2) for every I in [4]
    base = rank(J5)
    for I in range(1, 16):
        X = J5
        for i in range(4):
            if I >> i & 1:
                X |= 1 << four[i]
        if rank(X) - base != min(popcount(I), 2):
            return False
    return True


def is_binary_via_Q6(M: RankOracle) -> bool:
    """Search for four singleton blocks and a fifth block carrying a U(2,4) pattern.

    The condition is symmetric in the four singletons, so 4-subsets are
    enumerated rather than ordered 4-tuples: ``C(n,4) * 2^(n-4)`` candidates.
    Ground sets with fewer than four elements are binary and trigger a
    warning because the test is vacuous there.
    """
    if M.n < 4:
        warnings.warn("ground set has fewer than 4 elements; binary test is vacuous", stacklevel=2)
        return True
    for four in itertools.combinations(range(M.n), 4):
        rest = [e for e in range(M.n) if e not in four]
        for sub in range(1 << len(rest)):
            if _u24_pattern(M.rank, four, _spread(sub, rest)):
                return False
    return True


def has_u24_minor_bruteforce(M: RankOracle) -> bool:
    """Contract ``C``, delete ``D`` for every disjoint pair leaving 4 elements."""
    if M.n > BRUTEFORCE_GROUND:
        raise BudgetError("brute-force minor search ground size", M.n, BRUTEFORCE_GROUND)
    if M.n < 4:
        return False
    u24 = [min(popcount(X), 2) for X in range(16)]
    for four in itertools.combinations(range(M.n), 4):
        rest = [e for e in range(M.n) if e not in four]
        for sub in range(1 << len(rest)):
            C = _spread(sub, rest)
            D = M.full & ~C & ~mask_of(four)
            N = delete(contract(M, C), _reindex_after_removal(D, C, M.n))
            if N.n == 4 and all(N.rank(X) == u24[X] for X in range(16)):
                return True
    return False


def _reindex_after_removal(D: int, C: int, n: int) -> int:
    # position of D's elements inside the ground set left after removing C
    keep = [e for e in range(n) if not C >> e & 1]
    return mask_of(i for i, e in enumerate(keep) if D >> e & 1)


def q6_has_u24_pattern(Q6: QuotientSet) -> bool:
    """Whether some point of ``Q_6(rk)`` satisfies ``f(I + {5}) - f({5}) = min(|I|, 2)``.

    Labels are zero-based here: blocks 0..3 carry ``I``, block 4 is the
    contracted part.
    """
    if Q6.k != 6:
        raise DomainError("the binary criterion reads Q_6")
    tabs = relabel_tables(6)
    five = 1 << 4
    for p in Q6.canonical_points():
        for tab in tabs:
            w = [p[t] for t in tab]
            if all(w[I | five] - w[five] == min(popcount(I), 2) for I in range(16)):
                return True
    return False


def rank_table(M: RankOracle) -> SetFunction:
    """Unnormalized rank function as a set function (for quotient-set reads)."""
    return SetFunction(M.n, tuple(M.rank(X) for X in range(1 << M.n)))

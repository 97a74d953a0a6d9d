"""Finite set functions, partitions, quotients and common lifts.

A set function on the ground set ``{0, ..., n-1}`` is stored as a table
indexed by subset bitmask: bit ``i`` of the mask is element ``i`` (element
``i + 1`` in one-based notation).  Values are exact ``Fraction`` objects.

Functions that only depend on the cardinality of their argument can be held
without a table (:class:`SymmetricSetFunction`); this is what lets uniform
matroids and dyadic Lebesgue quotients go well past the table cap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

MAX_GROUND = 24


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


class BudgetError(RuntimeError):
    """Raised when an enumeration would exceed its configured budget."""

    def __init__(self, what: str, needed: int, bound: int):
        super().__init__(f"{what}: {needed} exceeds budget {bound}")
        self.needed = needed
        self.bound = bound


def as_exact(x):
    """Coerce ints and ``p/q`` strings to ``Fraction``; leave floats alone."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return x
    raise DomainError(f"not a number: {x!r}")


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


@dataclass(frozen=True)
class SetFunction:
    """Value table of a set function on ``2^[n]``.

    ``symmetric`` marks functions invariant under all permutations of the
    ground set; quotient enumeration uses it to switch to block sizes.
    """

    n: int
    values: tuple
    symmetric: bool = False

    def __post_init__(self):
        if not 0 <= self.n <= MAX_GROUND:
            raise DomainError(f"ground size {self.n} outside [0, {MAX_GROUND}]")
        vals = tuple(as_exact(v) for v in self.values)
        if len(vals) != 1 << self.n:
            raise DomainError(f"table length {len(vals)} != 2^{self.n}")
        if vals[0] != 0:
            raise DomainError("value on the empty set must be 0")
        object.__setattr__(self, "values", vals)

    @property
    def ground_size(self) -> int:
        return self.n

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def total(self):
        return self.values[-1]

    def evaluate(self, S: int):
        if not 0 <= S < len(self.values):
            raise DomainError(f"bitmask {S} outside ground set of size {self.n}")
        return self.values[S]

    __call__ = evaluate

    def size_value(self, s: int):
        """Value on a set of size ``s``; only meaningful when symmetric."""
        return self.values[(1 << s) - 1]

    def to_table(self) -> "SetFunction":
        return self

    def value_range(self):
        return min(self.values), max(self.values)

    @classmethod
    def from_function(cls, n: int, fn, symmetric: bool = False) -> "SetFunction":
        return cls(n, tuple(fn(S) for S in range(1 << n)), symmetric)


@dataclass(frozen=True)
class SymmetricSetFunction:
    """Set function of the form ``X -> h(|X|)``, stored as ``h``."""

    n: int
    by_size: tuple
    symmetric: bool = field(default=True, init=False)

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("negative ground size")
        vals = tuple(as_exact(v) for v in self.by_size)
        if len(vals) != self.n + 1:
            raise DomainError(f"need {self.n + 1} size values, got {len(vals)}")
        if vals[0] != 0:
            raise DomainError("value on the empty set must be 0")
        object.__setattr__(self, "by_size", vals)

    @property
    def ground_size(self) -> int:
        return self.n

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def total(self):
        return self.by_size[-1]

    def evaluate(self, S: int):
        if not 0 <= S <= self.full:
            raise DomainError(f"bitmask {S} outside ground set of size {self.n}")
        return self.by_size[popcount(S)]

    __call__ = evaluate

    def size_value(self, s: int):
        return self.by_size[s]

    def to_table(self) -> SetFunction:
        if self.n > MAX_GROUND:
            raise BudgetError("table size 2^n", 1 << self.n, 1 << MAX_GROUND)
        h = self.by_size
        return SetFunction(self.n, tuple(h[popcount(S)] for S in range(1 << self.n)), True)

    def value_range(self):
        return min(self.by_size), max(self.by_size)


AnySetFunction = Union[SetFunction, SymmetricSetFunction]


@dataclass(frozen=True)
class Partition:
    """Map of ground elements to labels ``0..k-1``; blocks may be empty."""

    n: int
    k: int
    assignment: tuple

    def __post_init__(self):
        a = tuple(int(x) for x in self.assignment)
        if self.k < 1:
            raise DomainError("a partition needs at least one block label")
        if len(a) != self.n:
            raise DomainError(f"assignment length {len(a)} != ground size {self.n}")
        if any(not 0 <= x < self.k for x in a):
            raise DomainError(f"assignment entries must lie in [0, {self.k})")
        object.__setattr__(self, "assignment", a)

    @classmethod
    def from_assignment(cls, assignment: Sequence[int], k: int | None = None) -> "Partition":
        assignment = tuple(assignment)
        if k is None:
            k = max(assignment, default=0) + 1
        return cls(len(assignment), k, assignment)

    @classmethod
    def from_blocks(cls, n: int, blocks: Sequence[int]) -> "Partition":
        """Build from block bitmasks; they must be disjoint and cover ``[n]``."""
        a = [-1] * n
        for label, b in enumerate(blocks):
            for e in bits(b):
                if e >= n or a[e] != -1:
                    raise DomainError("blocks must be disjoint subsets of the ground set")
                a[e] = label
        if -1 in a:
            raise DomainError("blocks must cover the ground set")
        return cls(n, max(len(blocks), 1), tuple(a))

    @classmethod
    def one_block(cls, n: int) -> "Partition":
        return cls(n, 1, (0,) * n)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(n, max(n, 1), tuple(range(n)))

    def blocks(self) -> list[int]:
        out = [0] * self.k
        for e, b in enumerate(self.assignment):
            out[b] |= 1 << e
        return out

    def preimage(self, A: int) -> int:
        """Union of the blocks whose labels are in the bitmask ``A``."""
        m = 0
        for e, b in enumerate(self.assignment):
            if A >> b & 1:
                m |= 1 << e
        return m


def _union_table(blocks: Sequence[int]) -> list[int]:
    # unions[A] = OR of blocks[i] for i in A, built in bitmask order
    unions = [0]
    for b in blocks:
        unions += [u | b for u in unions]
    return unions


def evaluate(f: AnySetFunction, S: int):
    return f.evaluate(S)


def quotient(f: AnySetFunction, P: Partition) -> AnySetFunction:
    """The quotient ``A -> f(union of blocks in A)`` on ``2^[k]``.

    A symmetric ``f`` quotiented by equal-size blocks stays symmetric and is
    returned without a table.
    """
    if P.n != f.n:
        raise DomainError(f"partition on {P.n} elements, function on {f.n}")
    blocks = P.blocks()
    if f.symmetric:
        sizes = [popcount(b) for b in blocks]
        if len(set(sizes)) == 1 and (P.k > MAX_GROUND or isinstance(f, SymmetricSetFunction)):
            s = sizes[0]
            return SymmetricSetFunction(P.k, tuple(f.size_value(s * j) for j in range(P.k + 1)))
        if P.k > MAX_GROUND:
            raise BudgetError("quotient table size 2^k", 1 << P.k, 1 << MAX_GROUND)
        unions = _union_table(sizes_as_masks(sizes))
        vals = tuple(f.size_value(popcount(u)) for u in unions)
        return SetFunction(P.k, vals, symmetric=len(set(sizes)) == 1)
    if P.k > MAX_GROUND:
        raise BudgetError("quotient table size 2^k", 1 << P.k, 1 << MAX_GROUND)
    table = f.values
    return SetFunction(P.k, tuple(table[u] for u in _union_table(blocks)))


def sizes_as_masks(sizes: Sequence[int]) -> list[int]:
    """Consecutive-element block masks with the given sizes."""
    out, start = [], 0
    for s in sizes:
        out.append(((1 << s) - 1) << start)
        start += s
    return out


def compose(P: Partition, Q: Partition) -> Partition:
    """Partition of ``P``'s ground set obtained by relabeling ``P``'s blocks via ``Q``."""
    if Q.n != P.k:
        raise DomainError(f"second partition acts on {Q.n} labels, first has {P.k}")
    return Partition(P.n, Q.k, tuple(Q.assignment[b] for b in P.assignment))


def common_refinement(P1: Partition, P2: Partition) -> Partition:
    """Nonempty intersections of blocks, labeled by first occurrence."""
    if P1.n != P2.n:
        raise DomainError(f"ground sizes differ: {P1.n} vs {P2.n}")
    labels: dict[tuple[int, int], int] = {}
    a = []
    for x, y in zip(P1.assignment, P2.assignment):
        a.append(labels.setdefault((x, y), len(labels)))
    return Partition(P1.n, max(len(labels), 1), tuple(a))


def block_map(fine: Partition, coarse: Partition) -> tuple:
    """The map from blocks of ``fine`` to blocks of ``coarse``.

    ``fine`` must refine ``coarse``; empty fine blocks map to label 0.
    """
    if fine.n != coarse.n:
        raise DomainError("ground sizes differ")
    m = [None] * fine.k
    for x, y in zip(fine.assignment, coarse.assignment):
        if m[x] is None:
            m[x] = y
        elif m[x] != y:
            raise DomainError("first partition does not refine the second")
    return tuple(0 if v is None else v for v in m)


def common_lift(f: AnySetFunction, partitions: Sequence[Partition]):
    """Quotient of ``f`` by the common refinement of ``partitions``.

    Returns ``(lift, maps)`` where ``maps[i]`` sends each refined block to
    its block in ``partitions[i]``, so that
    ``quotient(lift, Partition(lift.n, P_i.k, maps[i])) == quotient(f, P_i)``.
    """
    R = Partition.one_block(f.n)
    for P in partitions:
        if P.n != f.n:
            raise DomainError(f"partition on {P.n} elements, function on {f.n}")
        R = common_refinement(R, P)
    return quotient(f, R), [block_map(R, P) for P in partitions]


def is_submodular(f: AnySetFunction) -> bool:
    """Local exchange test ``f(S+i) + f(S+j) >= f(S) + f(S+i+j)``."""
    if isinstance(f, SymmetricSetFunction):
        h = f.by_size
        return all(2 * h[s + 1] >= h[s] + h[s + 2] for s in range(f.n - 1))
    v = f.values
    n = f.n
    for S in range(1 << n):
        base = v[S]
        free = [1 << i for i in range(n) if not S >> i & 1]
        for a in range(len(free)):
            bi = free[a]
            vi = v[S | bi]
            for b in range(a + 1, len(free)):
                bj = free[b]
                if vi + v[S | bj] < base + v[S | bi | bj]:
                    return False
    return True


def is_increasing(f: AnySetFunction) -> bool:
    if isinstance(f, SymmetricSetFunction):
        h = f.by_size
        return all(h[s] <= h[s + 1] for s in range(f.n))
    v = f.values
    for S in range(1 << f.n):
        for i in range(f.n):
            if not S >> i & 1 and v[S] > v[S | 1 << i]:
                return False
    return True


def ideal_setfunction(n: int, ideal: Iterable[int]) -> SetFunction:
    """Indicator of *not* lying in a set ideal: ``X -> 1(X not in I)``."""
    I = frozenset(ideal)
    full = (1 << n) - 1
    if 0 not in I:
        raise DomainError("an ideal must contain the empty set")
    for X in I:
        if X & ~full or X < 0:
            raise DomainError(f"bitmask {X} outside ground set")
        for e in bits(X):
            if X & ~(1 << e) not in I:
                raise DomainError(f"not downward closed at {X}")
    return SetFunction(n, tuple(Fraction(int(X not in I)) for X in range(1 << n)))


def choquet_inequality_check(f: AnySetFunction, pairs: Sequence[tuple[int, int]]) -> bool:
    """``f(U B_i) - f(U A_i) <= sum_i (f(B_i) - f(A_i))`` for ``A_i`` inside ``B_i``.

    Requires ``f`` increasing and submodular.
    """
    if not (is_increasing(f) and is_submodular(f)):
        raise DomainError("Choquet's inequality needs an increasing submodular function")
    ua = ub = 0
    rhs = 0
    for A, B in pairs:
        if A & ~B:
            raise DomainError(f"pair ({A}, {B}) is not nested")
        ua |= A
        ub |= B
        rhs += f.evaluate(B) - f.evaluate(A)
    return f.evaluate(ub) - f.evaluate(ua) <= rhs

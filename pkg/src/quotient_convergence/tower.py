"""Towers of finite set functions, the sofic construction, and clopen limits.

A tower is a sequence of finite set functions each of which is a quotient of
the next.  Its inverse limit carries a set function on the clopen cylinder
sets; a cylinder of depth ``n`` is a subset ``S`` of level ``n``'s ground
set, and it is the same clopen set as its preimage at depth ``n + 1``.
Only these finite-depth algebras are ever materialized.

Depths are one-based, matching level numbering.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .core import (
    AnySetFunction,
    DomainError,
    Partition,
    SetFunction,
    block_map,
    common_refinement,
    quotient,
)
from .metric import hausdorff
from .profile import QuotientSet, contains_vector, quotient_set, relabel_tables


@dataclass(frozen=True)
class Tower:
    """``levels[i]`` is a quotient of ``levels[i+1]`` through ``maps[i]``.

    ``maps[i]`` has one entry per element of level ``i+1`` naming its image
    in level ``i`` (zero-based indices).
    """

    levels: tuple
    maps: tuple

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "maps", tuple(tuple(m) for m in self.maps))
        if len(self.maps) != max(len(self.levels) - 1, 0):
            raise DomainError("a tower with L levels needs L - 1 maps")

    def __len__(self):
        return len(self.levels)

    def partition(self, i: int) -> Partition:
        """The map into level ``i`` (zero-based) as a partition of level ``i+1``."""
        return Partition(self.levels[i + 1].n, max(self.levels[i].n, 1), self.maps[i])

    def to_json(self) -> str:
        from .formats import dump_setfunction

        return json.dumps({"levels": [dump_setfunction(f) for f in self.levels], "maps": [list(m) for m in self.maps]})

    @classmethod
    def from_json(cls, text: str) -> "Tower":
        from .formats import parse_setfunction

        d = json.loads(text)
        return cls(tuple(parse_setfunction(s) for s in d["levels"]), tuple(tuple(m) for m in d["maps"]))


@dataclass(frozen=True)
class TowerCheck:
    ok: bool
    level: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate_tower(t: Tower) -> TowerCheck:
    """Exact check of the tower invariants; reports the first bad level (one-based)."""
    for i, f in enumerate(t.levels):
        if f.evaluate(0) != 0:
            return TowerCheck(False, i + 1, "nonzero value on the empty set")
    for i, fmap in enumerate(t.maps):
        lo, hi = t.levels[i], t.levels[i + 1]
        if len(fmap) != hi.n or any(not 0 <= x < lo.n for x in fmap):
            return TowerCheck(False, i + 2, "map does not go between the level ground sets")
        if set(fmap) != set(range(lo.n)):
            return TowerCheck(False, i + 2, "map is not surjective")
        if quotient(hi, t.partition(i)).to_table().values != lo.to_table().values:
            return TowerCheck(False, i + 1, "level is not the quotient of the next one")
    return TowerCheck(True)


def tower_profile_check(t: Tower, k: int, **kw) -> bool:
    """``Q_k(level_n)`` is contained in ``Q_k(level_{n+1})`` for all consecutive levels."""
    sets = [quotient_set(f, k, **kw) for f in t.levels]
    return all(a.issubset(b) for a, b in zip(sets, sets[1:]))


def _is_exact(x) -> bool:
    return isinstance(x, (int, Rational)) and not isinstance(x, bool)


def _sqdist(a: Sequence, b: Sequence):
    return sum((x - y) * (x - y) for x, y in zip(a, b))


def greedy_epsilon_net_indices(points: Sequence[Sequence], eps, distance2=None) -> list[int]:
    """Indices chosen by the greedy rule: keep a point unless a kept one is within ``eps``.

    Comparisons are exact (squared distances against ``eps**2``) when the
    points and ``eps`` are rational.
    """
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    exact = _is_exact(eps) and all(_is_exact(x) for p in points for x in p)
    if exact:
        eps2 = Fraction(eps) ** 2
        pts = points
    else:
        eps2 = float(eps) ** 2
        pts = [[float(x) for x in p] for p in points]
    d2 = distance2 or _sqdist
    chosen: list[int] = []
    for i, p in enumerate(pts):
        if not any(d2(p, pts[j]) <= eps2 for j in chosen):
            chosen.append(i)
    return chosen


def greedy_epsilon_net(points: Sequence[Sequence], eps) -> list:
    """Subset of ``points`` such that each input lies within ``eps`` of a kept point."""
    return [points[i] for i in greedy_epsilon_net_indices(points, eps)]


def orbit_sqdist(k: int):
    """Squared distance minimized over relabelings of the first argument."""
    tabs = relabel_tables(k)

    def d2(a, b):
        return min(_sqdist([a[t] for t in tab], b) for tab in tabs)

    return d2


@dataclass
class LevelReport:
    """Covering bookkeeping for one anchored level of a sofic tower."""

    n: int
    level_index: int
    ground_size: int
    radius: Fraction
    # per l: exact max over Q_l(f) of the squared orbit distance to the net
    covered_sq: dict = field(default_factory=dict)
    net_sizes: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SoficTower:
    tower: Tower
    anchors: tuple          # tower level index (zero-based) holding psi_n
    partitions: tuple       # partition of f's ground set defining psi_n
    reports: tuple
    k_max: int


def _pad(lift: AnySetFunction, gmap: Sequence[int]):
    """Merge steps from ``lift`` down to its quotient through the surjection ``gmap``.

    Each step merges the lowest-index pair of elements with a common image
    and relabels compactly.  Returns ``(chain, merges, last)``: ``chain[0]``
    is ``lift``, ``merges[j]`` maps ``chain[j]`` onto ``chain[j+1]``, and
    ``last`` is the bijection from ``chain[-1]`` onto the target.
    """
    chain = [lift]
    merges = []
    cur = list(gmap)
    while len(set(cur)) < len(cur):
        a, b = next((a, b) for a in range(len(cur)) for b in range(a + 1, len(cur)) if cur[a] == cur[b])
        merge = tuple(i if i < b else (a if i == b else i - 1) for i in range(len(cur)))
        chain.append(quotient(chain[-1], Partition(len(cur), len(cur) - 1, merge)))
        merges.append(merge)
        del cur[b]
    return chain, merges, tuple(cur)


def build_sofic_tower(f: SetFunction, k_max: int, levels: int, **kw) -> SoficTower:
    """Finite quotients of ``f`` whose quotient sets approach ``Q_k(f)``.

    For ``n = 1..levels``: take a greedy ``1/n``-net (orbit distance) of each
    ``Q_k(f)``, ``k <= min(n, k_max)``, every net point carrying the
    partition that produced it; ``psi_n`` is the quotient of ``f`` by the
    common refinement of those partitions and of ``psi_{n-1}``'s.  Between
    consecutive ``psi``'s the tower is padded one element at a time by
    merging the lowest-index pair with a common image.
    """
    if k_max < 1 or levels < 1:
        raise DomainError("k_max and levels must be positive")
    sets = {k: quotient_set(f, k, witnesses=True, **kw) for k in range(1, k_max + 1)}
    R = Partition.one_block(f.n)
    tower_levels = [quotient(f, R)]
    tower_maps: list = []
    anchors, partitions, reports = [], [], []
    for n in range(1, levels + 1):
        radius = Fraction(1, n)
        report = LevelReport(n, 0, 0, radius)
        for k in range(1, min(n, k_max) + 1):
            Q = sets[k]
            pts = Q.sorted_points()
            d2 = orbit_sqdist(k)
            idx = greedy_epsilon_net_indices(pts, radius, d2)
            report.net_sizes[k] = len(idx)
            report.covered_sq[k] = max(min(d2(p, pts[i]) for i in idx) for p in pts)
            for i in idx:
                R = common_refinement(R, Q.witnesses[pts[i]])
        lift = quotient(f, R)
        prev = tower_levels[-1]
        if lift.n != prev.n:
            prev_R = partitions[-1] if partitions else Partition.one_block(f.n)
            chain, merges, last = _pad(lift, block_map(R, prev_R))
            # chain runs fine -> coarse and ends at a relabeled copy of prev
            into_prev = tuple(last[x] for x in merges[-1])
            tower_levels.extend(chain[-2::-1])
            tower_maps.append(into_prev)
            tower_maps.extend(merges[j] for j in range(len(merges) - 2, -1, -1))
        anchors.append(len(tower_levels) - 1)
        partitions.append(R)
        report.level_index = len(tower_levels) - 1
        report.ground_size = lift.n
        reports.append(report)
    t = Tower(tuple(tower_levels), tuple(tower_maps))
    return SoficTower(t, tuple(anchors), tuple(partitions), tuple(reports), k_max)


def verify_sofic_guarantee(st: SoficTower, f: SetFunction, tol: float = 1e-9, **kw) -> list[dict]:
    """Re-check ``d_H^l(Q_l(psi_n), Q_l(f)) <= 1/n`` two ways for each anchor.

    ``bookkeeping`` is exact: the recorded net covers ``Q_l(f)`` within
    ``1/n``, every net point lies in ``Q_l(psi_n)``, and ``Q_l(psi_n)`` lies
    in ``Q_l(f)``.  ``direct`` recomputes the Hausdorff distance.
    """
    target = {k: quotient_set(f, k, **kw) for k in range(1, st.k_max + 1)}
    rows = []
    for rep, anchor in zip(st.reports, st.anchors):
        level = st.tower.levels[anchor]
        for l in range(1, min(rep.n, st.k_max) + 1):
            Ql = quotient_set(level, l, **kw)
            pts = target[l].sorted_points()
            d2 = orbit_sqdist(l)
            net = [p for p in pts if contains_vector(Ql, p, 0)]
            cover = max(min(d2(p, q) for q in net) for p in pts)
            exact_ok = cover <= rep.radius**2 and rep.covered_sq[l] <= rep.radius**2 and Ql.issubset(target[l])
            d = hausdorff(Ql, target[l])
            rows.append({
                "n": rep.n,
                "l": l,
                "ground_size": level.n,
                "radius": float(rep.radius),
                "bookkeeping_radius": math.sqrt(cover),
                "direct": d,
                "exact_ok": bool(exact_ok),
                "direct_ok": d <= float(rep.radius) + tol,
            })
    return rows


@dataclass(frozen=True)
class ClopenSet:
    """Cylinder set given by a subset (bitmask) of level ``depth``."""

    depth: int
    mask: int


@dataclass(frozen=True)
class ClopenLimit:
    """Set function on the clopen algebra of a tower's inverse limit."""

    tower: Tower

    def __post_init__(self):
        check = validate_tower(self.tower)
        if not check:
            raise DomainError(f"invalid tower at level {check.level}: {check.reason}")

    @property
    def depth(self) -> int:
        return len(self.tower)

    def ground_size(self, depth: int) -> int:
        self._check_depth(depth)
        return self.tower.levels[depth - 1].n

    def _check_depth(self, depth: int):
        if not 1 <= depth <= self.depth:
            raise DomainError(f"depth {depth} outside [1, {self.depth}]")

    def preimage(self, depth: int, S: int) -> int:
        """The same cylinder expressed at ``depth + 1``."""
        self._check_depth(depth + 1)
        fmap = self.tower.maps[depth - 1]
        return sum(1 << e for e, x in enumerate(fmap) if S >> x & 1)

    def lift(self, U: ClopenSet, depth: int) -> ClopenSet:
        if depth < U.depth:
            raise DomainError("can only lift cylinders to greater depth")
        mask = U.mask
        for d in range(U.depth, depth):
            mask = self.preimage(d, mask)
        return ClopenSet(depth, mask)

    def evaluate(self, U: ClopenSet):
        return clopen_evaluate(self, U.depth, U.mask)

    def union(self, U: ClopenSet, V: ClopenSet) -> ClopenSet:
        d = max(U.depth, V.depth)
        return ClopenSet(d, self.lift(U, d).mask | self.lift(V, d).mask)

    def intersection(self, U: ClopenSet, V: ClopenSet) -> ClopenSet:
        d = max(U.depth, V.depth)
        return ClopenSet(d, self.lift(U, d).mask & self.lift(V, d).mask)

    def complement(self, U: ClopenSet) -> ClopenSet:
        full = (1 << self.ground_size(U.depth)) - 1
        return ClopenSet(U.depth, full & ~U.mask)


def clopen_evaluate(L: ClopenLimit, depth: int, S: int):
    L._check_depth(depth)
    return L.tower.levels[depth - 1].evaluate(S)


def limit_quotient_set(L: ClopenLimit, k: int, depth: int, **kw) -> QuotientSet:
    """Quotients of the limit by ``k``-partitions into depth-``depth`` cylinders."""
    L._check_depth(depth)
    return quotient_set(L.tower.levels[depth - 1], k, **kw)

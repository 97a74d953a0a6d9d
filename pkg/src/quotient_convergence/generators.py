"""Seeded random instances: set functions, partitions, towers, matroids.

All generators take a ``random.Random`` so that values stay exact rationals
and runs are reproducible.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .core import Partition, SetFunction, quotient
from .matroid import RankOracle, gf2_rank, graphic_rank
from .tower import Tower


def _rat(rng: random.Random, num_hi: int = 6, den_hi: int = 4) -> Fraction:
    return Fraction(rng.randint(0, num_hi), rng.randint(1, den_hi))


def coverage_function(n: int, rng: random.Random) -> SetFunction:
    """Weighted coverage ``X -> w(union of the items covered by X)``."""
    items = rng.randint(1, 6)
    covers = [rng.getrandbits(items) for _ in range(n)]
    weights = [_rat(rng) for _ in range(items)]

    def f(X):
        c = 0
        for e in range(n):
            if X >> e & 1:
                c |= covers[e]
        return sum((w for j, w in enumerate(weights) if c >> j & 1), Fraction(0))

    return SetFunction.from_function(n, f)


def concave_of_modular(n: int, rng: random.Random) -> SetFunction:
    """``X -> sum_t a_t * min(b_t(X), c_t)`` with nonnegative modular ``b_t``."""
    terms = []
    for _ in range(rng.randint(1, 3)):
        b = [_rat(rng, 3, 2) for _ in range(n)]
        terms.append((_rat(rng, 3, 3), b, _rat(rng, 4, 2)))

    def f(X):
        total = Fraction(0)
        for a, b, c in terms:
            total += a * min(sum((b[e] for e in range(n) if X >> e & 1), Fraction(0)), c)
        return total

    return SetFunction.from_function(n, f)


def random_increasing_submodular(n: int, rng: random.Random) -> SetFunction:
    """A sum of a coverage and a concave-of-modular function, sometimes truncated.

    Both summands are increasing and submodular, and truncating an
    increasing submodular function at a constant keeps both properties.
    """
    a = coverage_function(n, rng).values
    b = concave_of_modular(n, rng).values
    vals = [x + y for x, y in zip(a, b)]
    if rng.random() < 0.3 and vals[-1] > 0:
        cap = vals[-1] * Fraction(rng.randint(1, 4), 4)
        vals = [min(v, cap) for v in vals]
    return SetFunction(n, tuple(vals))


def random_setfunction(n: int, rng: random.Random, num_hi: int = 6, den_hi: int = 4) -> SetFunction:
    """Arbitrary values (no structure) with ``f(0) = 0``."""
    return SetFunction(n, (Fraction(0),) + tuple(_rat(rng, num_hi, den_hi) for _ in range((1 << n) - 1)))


def random_partition(n: int, k: int, rng: random.Random) -> Partition:
    return Partition(n, k, tuple(rng.randrange(k) for _ in range(n)))


def random_surjection(n: int, k: int, rng: random.Random) -> tuple:
    """Uniform-ish surjection ``[n] -> [k]`` (requires ``n >= k >= 1``)."""
    a = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
    rng.shuffle(a)
    return tuple(a)


def random_tower(rng: random.Random, levels: int = 4, max_ground: int = 8, top=None) -> Tower:
    """Quotient chain below a random increasing submodular top level.

    Ground sizes are strictly increasing and end at most at ``max_ground``.
    """
    sizes = sorted(rng.sample(range(1, max_ground + 1), levels))
    f = top if top is not None else random_increasing_submodular(sizes[-1], rng)
    lv = [f]
    maps = []
    for v in reversed(sizes[:-1]):
        m = random_surjection(lv[0].n, v, rng)
        lv.insert(0, quotient(lv[0], Partition(lv[0].n, v, m)))
        maps.insert(0, m)
    return Tower(tuple(lv), tuple(maps))


def random_gf2_matroid(rng: random.Random, max_elements: int = 10, max_rows: int = 4) -> RankOracle:
    n = rng.randint(4, max_elements)
    rows = rng.randint(2, max_rows)
    return gf2_rank([[rng.randint(0, 1) for _ in range(n)] for _ in range(rows)])


def graph_list(extra: int = 50, seed: int = 20240) -> dict[str, list[tuple[int, int]]]:
    """Fixed small graphs (at most 8 edges) for the graphic corpus.

    Named graphs plus ``extra`` seeded random multigraphs on up to 6 vertices.
    """
    g = {
        "K3": [(0, 1), (1, 2), (0, 2)],
        "K4": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        "C4": [(0, 1), (1, 2), (2, 3), (3, 0)],
        "C5": [(i, (i + 1) % 5) for i in range(5)],
        "C8": [(i, (i + 1) % 8) for i in range(8)],
        "P5": [(i, i + 1) for i in range(4)],
        "K23": [(a, b) for a in (0, 1) for b in (2, 3, 4)],
        "W4": [(0, i) for i in range(1, 5)] + [(1, 2), (2, 3), (3, 4), (4, 1)],
        "theta": [(0, 1), (0, 1), (0, 1), (1, 2), (2, 0)],
        "bowtie": [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)],
        "K4_plus_pendant": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)],
        "star5": [(0, i) for i in range(1, 6)],
        "double_triangle": [(0, 1), (1, 2), (2, 0), (0, 1), (1, 2), (2, 0)],
        "loop_graph": [(0, 0), (0, 1), (1, 2), (2, 0), (1, 1)],
        "prism_minus": [(0, 1), (1, 2), (2, 0), (3, 4), (0, 3), (1, 4), (2, 4)],
        "K4_subdivided": [(0, 1), (0, 2), (0, 5), (5, 3), (1, 2), (1, 3), (2, 3)],
    }
    rng = random.Random(seed)
    for i in range(extra):
        v = rng.randint(2, 6)
        g[f"random_{i}"] = [(rng.randrange(v), rng.randrange(v)) for _ in range(rng.randint(4, 8))]
    return g


def graphic_corpus() -> dict[str, RankOracle]:
    return {name: graphic_rank(e) for name, e in graph_list().items()}


def random_nested_pairs(n: int, rng: random.Random, count: int) -> list[tuple[int, int]]:
    out = []
    for _ in range(count):
        B = rng.getrandbits(n) if n else 0
        A = B & (rng.getrandbits(n) if n else 0)
        out.append((A, B))
    return out

"""Text formats for set functions, partitions, quotient sets, matroids and graphons.

Set function::

    n=<int>
    <bitmask> <p>/<q>        # 2^n lines, bit i is element i+1

Partition::

    k=<int>
    <label> <label> ...      # one zero-based label per element

Symmetric set functions may instead be written as ``n=<int> symmetric``
followed by ``n+1`` lines ``<size> <p>/<q>``.
"""
from __future__ import annotations

import csv
import io
from fractions import Fraction

from .analytic import StepGraphon
from .core import DomainError, Partition, SetFunction, SymmetricSetFunction
from .matroid import (
    RankOracle,
    SparsePavingFamily,
    gf2_rank,
    graphic_rank,
    sparse_paving_rank,
    uniform_rank,
)
from .profile import QuotientSet


class ParseError(DomainError):
    def __init__(self, msg: str, line: int | None = None, source: str = "<input>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + msg)
        self.line = line


def fmt_value(x) -> str:
    if isinstance(x, float):
        return repr(x)
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def _fraction(tok: str, line: int, source: str):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", line, source) from None


def _int(tok: str, line: int, source: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad integer {tok!r}", line, source) from None


def dump_setfunction(f) -> str:
    if isinstance(f, SymmetricSetFunction):
        rows = [f"n={f.n} symmetric"] + [f"{s} {fmt_value(v)}" for s, v in enumerate(f.by_size)]
    else:
        rows = [f"n={f.n}" + (" symmetric" if f.symmetric else "")]
        rows += [f"{S} {fmt_value(v)}" for S, v in enumerate(f.values)]
    return "\n".join(rows) + "\n"


def parse_setfunction(text: str, source: str = "<input>"):
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty set function file", None, source)
    ln, head = lines[0]
    parts = head.split()
    if not parts[0].startswith("n="):
        raise ParseError("expected header 'n=<int>'", ln, source)
    n = _int(parts[0][2:], ln, source)
    symmetric = len(parts) > 1 and parts[1] == "symmetric"
    if len(parts) > 2 or (len(parts) == 2 and not symmetric):
        raise ParseError(f"unexpected header tokens {parts[1:]}", ln, source)
    values: dict[int, Fraction] = {}
    for ln, line in lines[1:]:
        toks = line.split()
        if len(toks) != 2:
            raise ParseError("expected '<index> <p>/<q>'", ln, source)
        idx = _int(toks[0], ln, source)
        if idx in values:
            raise ParseError(f"duplicate index {idx}", ln, source)
        values[idx] = _fraction(toks[1], ln, source)
    # a symmetric header with n+1 lines lists values by set size
    by_size = symmetric and len(values) == n + 1
    expected = n + 1 if by_size else 1 << n
    bad = [i for i in values if not 0 <= i < expected]
    if bad:
        raise ParseError(f"index {bad[0]} out of range", None, source)
    if len(values) != expected:
        raise ParseError(f"expected {expected} value lines, found {len(values)}", None, source)
    ordered = tuple(values[i] for i in range(expected))
    try:
        if by_size:
            return SymmetricSetFunction(n, ordered)
        return SetFunction(n, ordered, symmetric)
    except DomainError as e:
        raise ParseError(str(e), None, source) from None


def dump_partition(P: Partition) -> str:
    return f"k={P.k}\n" + " ".join(map(str, P.assignment)) + "\n"


def parse_partition(text: str, source: str = "<input>") -> Partition:
    lines = list(_content_lines(text))
    if not lines or not lines[0][1].startswith("k="):
        raise ParseError("expected header 'k=<int>'", lines[0][0] if lines else None, source)
    k = _int(lines[0][1][2:], lines[0][0], source)
    labels = [_int(t, ln, source) for ln, line in lines[1:] for t in line.split()]
    try:
        return Partition(len(labels), k, tuple(labels))
    except DomainError as e:
        raise ParseError(str(e), None, source) from None


def subset_columns(k: int) -> list[str]:
    """Column names ``s<mask>`` in bitmask order."""
    return [f"s{A}" for A in range(1 << k)]


def dump_quotient_set(Q: QuotientSet) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k"] + subset_columns(Q.k))
    for p in Q.sorted_points():
        w.writerow([Q.k] + [fmt_value(x) for x in p])
    return buf.getvalue()


def parse_quotient_set(text: str, source: str = "<input>") -> QuotientSet:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][0] != "k":
        raise ParseError("expected header starting with 'k'", 1, source)
    k = (len(rows[0]) - 1).bit_length() - 1
    if 1 << k != len(rows[0]) - 1:
        raise ParseError("header width is not 1 + 2^k", 1, source)
    pts = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(rows[0]) or _int(row[0], i, source) != k:
            raise ParseError("row does not match header", i, source)
        pts.append(tuple(float(x) if "." in x or "e" in x else _fraction(x, i, source) for x in row[1:]))
    return QuotientSet.from_vectors(k, pts)


def parse_matroid(text: str, source: str = "<input>") -> RankOracle:
    """``uniform n r`` | ``paving n r`` + bitmask rows | ``graphic`` + edge rows | ``gf2`` + 0/1 rows."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty matroid file", None, source)
    ln, head = lines[0]
    toks = head.split()
    kind = toks[0]
    body = lines[1:]
    try:
        if kind == "uniform":
            if len(toks) != 3 or body:
                raise ParseError("expected 'uniform <n> <r>' and nothing else", ln, source)
            return uniform_rank(_int(toks[1], ln, source), _int(toks[2], ln, source))
        if kind == "paving":
            if len(toks) != 3:
                raise ParseError("expected 'paving <n> <r>'", ln, source)
            n, r = _int(toks[1], ln, source), _int(toks[2], ln, source)
            H = []
            for bl, line in body:
                if len(line.split()) != 1:
                    raise ParseError("expected one bitmask per line", bl, source)
                H.append(_int(line, bl, source))
            return sparse_paving_rank(SparsePavingFamily(n, r, frozenset(H)))
        if kind == "graphic":
            edges = []
            for bl, line in body:
                t = line.split()
                if len(t) != 2:
                    raise ParseError("expected an edge '<u> <v>'", bl, source)
                edges.append((_int(t[0], bl, source), _int(t[1], bl, source)))
            return graphic_rank(edges)
        if kind == "gf2":
            rows = []
            for bl, line in body:
                t = line.split() if " " in line else list(line)
                if any(x not in ("0", "1") for x in t):
                    raise ParseError("matrix entries must be 0 or 1", bl, source)
                rows.append([int(x) for x in t])
            return gf2_rank(rows)
    except ParseError:
        raise
    except DomainError as e:
        raise ParseError(str(e), ln, source) from None
    raise ParseError(f"unknown matroid kind {kind!r}", ln, source)


def dump_matroid(M: RankOracle) -> str:
    if M.kind == "uniform":
        return f"uniform {M.n} {M.params[0]}\n"
    if M.kind == "sparse_paving":
        return f"paving {M.n} {M.params[0]}\n" + "".join(f"{A}\n" for A in M.params[1])
    if M.kind == "graphic":
        return "graphic\n" + "".join(f"{u} {v}\n" for u, v in M.params)
    if M.kind == "gf2":
        cols = M.params
        m = max((c.bit_length() for c in cols), default=0)
        return "gf2\n" + "".join(" ".join(str(c >> i & 1) for c in cols) + "\n" for i in range(max(m, 1)))
    raise DomainError(f"no file format for oracle kind {M.kind!r}")


def parse_graphon(text: str, source: str = "<input>") -> StepGraphon:
    """Line 1 ``q``, line 2 the ``q`` weights, then ``q`` matrix rows."""
    lines = list(_content_lines(text))
    if len(lines) < 2:
        raise ParseError("expected q, weights and matrix rows", None, source)
    q = _int(lines[0][1], lines[0][0], source)
    if len(lines) != q + 2:
        raise ParseError(f"expected {q} matrix rows after the weights", None, source)

    def row(entry, width):
        ln, line = entry
        t = line.split()
        if len(t) != width:
            raise ParseError(f"expected {width} entries", ln, source)
        return tuple(_fraction(x, ln, source) for x in t)

    weights = row(lines[1], q)
    values = tuple(row(e, q) for e in lines[2:])
    try:
        return StepGraphon(weights, values)
    except DomainError as e:
        raise ParseError(str(e), None, source) from None


def read_text(path) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()

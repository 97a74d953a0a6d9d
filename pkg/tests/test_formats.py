import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from quotient_convergence import generators as gen
from quotient_convergence.core import Partition, SymmetricSetFunction
from quotient_convergence.formats import (
    ParseError,
    dump_matroid,
    dump_partition,
    dump_quotient_set,
    dump_setfunction,
    parse_graphon,
    parse_matroid,
    parse_partition,
    parse_quotient_set,
    parse_setfunction,
)
from quotient_convergence.matroid import fano_matrix, gf2_rank, graphic_rank, random_sparse_paving_family, sparse_paving_rank, uniform_rank
from quotient_convergence.profile import quotient_set
from strategies import setfunctions


@given(setfunctions(max_n=4))
def test_setfunction_roundtrip(f):
    assert parse_setfunction(dump_setfunction(f)).values == f.values


def test_symmetric_by_size_roundtrip():
    f = SymmetricSetFunction(30, tuple(F(min(s, 10), 30) for s in range(31)))
    g = parse_setfunction(dump_setfunction(f))
    assert isinstance(g, SymmetricSetFunction) and g.by_size == f.by_size


def test_setfunction_parse_errors_carry_lines():
    with pytest.raises(ParseError) as e:
        parse_setfunction("n=1\n0 0\n1 x\n")
    assert e.value.line == 3
    for bad in ["", "k=1\n", "n=1\n0 0\n", "n=1\n0 1\n1 1\n", "n=1\n0 0\n0 0\n", "n=1 extra\n0 0\n1 1\n"]:
        with pytest.raises(ParseError):
            parse_setfunction(bad)


def test_comments_and_blank_lines_ignored():
    f = parse_setfunction("# header\nn=1\n\n0 0  # empty set\n1 3/7\n")
    assert f.values == (0, F(3, 7))


def test_partition_roundtrip_and_errors():
    P = Partition(5, 3, (0, 2, 2, 1, 0))
    assert parse_partition(dump_partition(P)) == P
    with pytest.raises(ParseError):
        parse_partition("k=2\n0 3\n")
    with pytest.raises(ParseError):
        parse_partition("0 1\n")


def test_quotient_set_roundtrip():
    Q = quotient_set(gen.random_setfunction(4, random.Random(2)), 2)
    text = dump_quotient_set(Q)
    assert text.splitlines()[0] == "k,s0,s1,s2,s3"
    assert parse_quotient_set(text) == Q
    with pytest.raises(ParseError):
        parse_quotient_set("k,s0,s1,s2\n")


@pytest.mark.parametrize("M", [
    uniform_rank(5, 2),
    graphic_rank([(0, 1), (1, 2), (2, 0), (2, 3)]),
    gf2_rank(fano_matrix()),
    sparse_paving_rank(random_sparse_paving_family(7, 3, random.Random(1))),
])
def test_matroid_roundtrip(M):
    N = parse_matroid(dump_matroid(M))
    assert N.n == M.n and all(N.rank(X) == M.rank(X) for X in range(1 << M.n))


def test_matroid_parse_errors():
    for bad in ["", "uniform 3\n", "uniform 3 5\n", "paving 4 2\n3\n5\n", "graphic\n0 1 2\n", "gf2\n0 2\n", "vector 1\n"]:
        with pytest.raises(ParseError):
            parse_matroid(bad)


def test_gf2_compact_rows():
    M = parse_matroid("gf2\n1010\n0110\n")
    assert M.n == 4 and M.rank(0b1111) == 2


def test_graphon_parse():
    W = parse_graphon("2\n1/2 1/2\n1 0\n0 1/3\n")
    assert W.q == 2 and W.values[1][1] == F(1, 3)
    with pytest.raises(ParseError):
        parse_graphon("2\n1/2 1/2\n1 0\n")
    with pytest.raises(ParseError):
        parse_graphon("1\n1\n2\n")

import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from quotient_convergence import generators as gen
from quotient_convergence.core import (
    BudgetError,
    DomainError,
    Partition,
    SetFunction,
    SymmetricSetFunction,
    common_lift,
    ideal_setfunction,
    quotient,
)
from quotient_convergence.profile import (
    QuotientSet,
    canonical,
    contains_vector,
    orbit,
    profile,
    quotient_set,
    relabel_tables,
)
from strategies import partitions, rho, setfunctions


def permute_vector(v, perm, k):
    # w[A] = v[perm(A)]
    out = []
    for A in range(1 << k):
        B = sum(1 << perm[i] for i in range(k) if A >> i & 1)
        out.append(v[B])
    return tuple(out)


def naive_orbit_closed_set(f, k):
    """Every labeled map [n] -> [k], then closed under all k! relabelings."""
    t = f.to_table().values
    raw = set()
    for a in itertools.product(range(k), repeat=f.n):
        vec = []
        for A in range(1 << k):
            vec.append(t[sum(1 << e for e, b in enumerate(a) if A >> b & 1)])
        raw.add(tuple(vec))
    return {permute_vector(v, p, k) for v in raw for p in itertools.permutations(range(k))}


def test_relabel_tables_identity_first():
    for k in range(1, 5):
        tabs = relabel_tables(k)
        assert len(tabs) == len(list(itertools.permutations(range(k))))
        assert tabs[0] == tuple(range(1 << k))


def test_canonical_is_orbit_invariant():
    v = (0, 1, 2, 3, 4, 5, 6, 7)
    c = canonical(v, 3)
    for w in orbit(v, 3):
        assert canonical(w, 3) == c


def test_examples_rho21_k2():
    Q = quotient_set(rho(2, 1), 2)
    assert Q.canonical_points() == {
        canonical((0, 0, F(1, 2), F(1, 2)), 2),
        canonical((0, F(1, 2), F(1, 2), F(1, 2)), 2),
    }
    assert len(Q) == 2


def test_k1_is_single_point():
    f = rho(5, 2)
    Q = quotient_set(f, 1)
    assert Q.sorted_points() == [(0, f.total)]
    assert [len(S) for S in profile(f, 1)] == [1]


def test_rho42_k2_has_three_orbits():
    # block sizes 4|0, 3|1, 2|2 give three distinct vectors
    Q = quotient_set(rho(4, 2), 2)
    assert len(Q) == 3
    assert Q.canonical_points() == {
        canonical((0, 0, F(1, 2), F(1, 2)), 2),
        canonical((0, F(1, 4), F(1, 2), F(1, 2)), 2),
        canonical((0, F(1, 2), F(1, 2), F(1, 2)), 2),
    }


def test_ideal_quotients_are_psi_vectors():
    g = ideal_setfunction(3, {0, 1, 2, 3})
    psi = {tuple(int(bool(A & X)) for X in range(4)) for A in range(4)}
    for p in quotient_set(g, 2).expanded().points:
        assert p in psi


def test_contains_vector_examples():
    Q = quotient_set(rho(2, 1), 2)
    for p in Q.sorted_points():
        assert contains_vector(Q, p, 0)
        swapped = permute_vector(p, (1, 0), 2)
        assert contains_vector(Q, swapped, 0)
    assert not contains_vector(Q, (0, F(1, 4), F(1, 4), F(1, 2)), 0)
    assert contains_vector(Q, (0, F(1, 4), F(1, 4), F(1, 2)), 0.4)
    with pytest.raises(DomainError):
        contains_vector(Q, (0, 1), 0)


def test_budget_and_domain_errors():
    f = rho(6, 3)
    with pytest.raises(BudgetError) as e:
        quotient_set(gen.random_setfunction(10, random.Random(0)), 3, budget=1000)
    assert e.value.needed == 3**10 and e.value.bound == 1000
    with pytest.raises(DomainError):
        quotient_set(f, 0)
    with pytest.raises(BudgetError):
        quotient_set(f, 7)


@settings(max_examples=40)
@given(st.data())
def test_pruned_enumeration_equals_naive(data):
    n = data.draw(st.integers(0, 8))
    k = data.draw(st.integers(1, 3))
    if k**n > 3**6:
        n = min(n, 6)
    f = gen.random_setfunction(n, random.Random(data.draw(st.integers(0, 10**6))))
    assert quotient_set(f, k).expanded().points == naive_orbit_closed_set(f, k)


def test_pruned_enumeration_equals_naive_n8():
    f = gen.random_setfunction(8, random.Random(7))
    for k in (1, 2, 3):
        assert quotient_set(f, k).expanded().points == naive_orbit_closed_set(f, k)


@given(st.integers(1, 9), st.integers(0, 9), st.integers(1, 4))
def test_symmetric_fast_path_equals_table_path(n, r, k):
    r = min(r, n)
    sym = SymmetricSetFunction(n, tuple(F(min(s, r), n) for s in range(n + 1)))
    plain = SetFunction(n, sym.to_table().values)  # not flagged symmetric
    assert quotient_set(sym, k) == quotient_set(plain, k)


@given(st.data())
def test_witnesses_reproduce_points(data):
    f = data.draw(setfunctions(max_n=5, min_n=1))
    k = data.draw(st.integers(1, 3))
    Q = quotient_set(f, k, witnesses=True)
    assert set(Q.witnesses) == set(Q.points)
    for p, P in Q.witnesses.items():
        assert quotient(f, P).values == p


def test_symmetric_witnesses_reproduce_points():
    f = SymmetricSetFunction(7, tuple(F(min(s, 3), 7) for s in range(8)))
    Q = quotient_set(f, 3, witnesses=True)
    for p, P in Q.witnesses.items():
        assert quotient(f.to_table(), P).values == p


@given(st.data())
def test_quotient_closedness(data):
    f = data.draw(setfunctions(max_n=5, min_n=1))
    P = data.draw(partitions(f.n))
    k = data.draw(st.integers(1, 3))
    assert quotient_set(quotient(f, P), k).issubset(quotient_set(f, k))


def test_common_lift_lands_in_product_k():
    f = gen.random_setfunction(5, random.Random(3))
    P1 = Partition(5, 2, (0, 1, 0, 1, 1))
    P2 = Partition(5, 2, (0, 0, 1, 1, 0))
    lift, _ = common_lift(f, [P1, P2])
    padded = Partition(lift.n, 4, tuple(range(lift.n)))
    assert contains_vector(quotient_set(f, 4), quotient(lift, padded).values, 0)


def test_float_values_snap_and_canonicalize():
    Q = QuotientSet.from_vectors(1, [(0, 0.1 + 0.2), (0, 0.3)])
    assert len(Q) == 1


def test_quotient_set_rejects_bad_points():
    with pytest.raises(DomainError):
        QuotientSet(1, frozenset({(1, 1)}))
    with pytest.raises(DomainError):
        QuotientSet(2, frozenset({(0, 1)}))


def test_parallel_equals_serial():
    f = gen.random_setfunction(9, random.Random(11))
    assert quotient_set(f, 3, workers=2) == quotient_set(f, 3)

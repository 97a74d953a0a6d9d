import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from quotient_convergence import generators as gen
from quotient_convergence.core import DomainError, SetFunction, quotient
from quotient_convergence.metric import pseudometric_d
from quotient_convergence.profile import quotient_set
from quotient_convergence.tower import (
    ClopenLimit,
    ClopenSet,
    Tower,
    build_sofic_tower,
    clopen_evaluate,
    greedy_epsilon_net,
    greedy_epsilon_net_indices,
    limit_quotient_set,
    tower_profile_check,
    validate_tower,
    verify_sofic_guarantee,
)
from strategies import rho


def two_level():
    return Tower((rho(2, 1), rho(4, 2)), ((0, 0, 1, 1),))


# -- validation ------------------------------------------------------------------

def test_validate_examples():
    assert validate_tower(Tower((rho(3, 1),), ()))
    assert validate_tower(two_level())
    bad = Tower((rho(2, 1), rho(4, 2)), ((0, 0, 0, 1),))
    check = validate_tower(bad)
    assert not check and check.level == 1


def test_validate_rejects_non_surjective_and_out_of_range():
    assert not validate_tower(Tower((rho(2, 1), rho(4, 2)), ((0, 0, 0, 0),)))
    assert not validate_tower(Tower((rho(2, 1), rho(4, 2)), ((0, 0, 1, 2),)))
    with pytest.raises(DomainError):
        Tower((rho(2, 1), rho(4, 2)), ())


def test_tower_json_roundtrip():
    t = gen.random_tower(random.Random(4))
    back = Tower.from_json(t.to_json())
    assert back.maps == t.maps
    assert [f.to_table().values for f in back.levels] == [f.to_table().values for f in t.levels]


def test_profile_check_examples():
    t = two_level()
    assert tower_profile_check(t, 2)
    assert tower_profile_check(t, 1)
    vals = list(t.levels[0].values)
    vals[1] = F(1, 3)
    corrupted = Tower((SetFunction(2, tuple(vals)), t.levels[1]), t.maps)
    assert not tower_profile_check(corrupted, 2)
    assert not validate_tower(corrupted)


@settings(max_examples=20)
@given(st.integers(0, 2**32 - 1))
def test_random_towers_are_valid_and_monotone(seed):
    t = gen.random_tower(random.Random(seed), levels=3, max_ground=7)
    assert validate_tower(t)
    for k in (1, 2, 3):
        assert tower_profile_check(t, k)


# -- greedy nets -----------------------------------------------------------------

def test_greedy_net_examples():
    pts = [(0, 0), (3, 4), (1, 1)]
    assert greedy_epsilon_net(pts, 100) == [(0, 0)]
    assert greedy_epsilon_net(pts, 0) == pts
    line = [(0,), (1,), (2,)]
    assert greedy_epsilon_net(line, 1) == [(0,), (2,)]
    with pytest.raises(DomainError):
        greedy_epsilon_net(pts, -1)


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=15),
       st.fractions(min_value=0, max_value=4, max_denominator=3))
def test_greedy_net_covers_and_separates(pts, eps):
    idx = greedy_epsilon_net_indices(pts, eps)
    d2 = lambda a, b: sum((x - y) ** 2 for x, y in zip(a, b))
    for p in pts:
        assert any(d2(p, pts[i]) <= eps**2 for i in idx)
    for a in idx:
        for b in idx:
            if a < b:
                assert d2(pts[a], pts[b]) > eps**2


# -- sofic construction ----------------------------------------------------------

def test_sofic_rho63_golden():
    f = rho(6, 3)
    st_ = build_sofic_tower(f, 2, 3)
    assert validate_tower(st_.tower)
    level3 = st_.tower.levels[st_.anchors[-1]]
    assert level3.values == (0, F(1, 2), F(1, 2), F(1, 2))
    rep = pseudometric_d(level3, f, 2)
    assert rep.per_k == pytest.approx([0.0, 1 / 6], abs=1e-15)
    assert rep.value == pytest.approx(1 / 24, abs=1e-15)
    assert rep.value <= 1 / 3 + rep.tail_bound


def test_sofic_two_element_function():
    f = SetFunction(2, (0, F(1, 3), F(1, 2), F(2, 3)))
    st_ = build_sofic_tower(f, 2, 4)
    levels = [st_.tower.levels[a] for a in st_.anchors]
    # the two orbits of Q_2(f) are sqrt(5)/6 ~ 0.373 apart, so a 1/2-net
    # still needs only one of them and f appears from n = 3 on
    assert levels[0].values == levels[1].values == (0, F(2, 3))
    for psi in levels[2:]:
        assert sorted(psi.values) == sorted(f.values)


@settings(max_examples=10)
@given(st.integers(0, 2**32 - 1))
def test_sofic_levels_are_quotients_of_f(seed):
    f = gen.random_increasing_submodular(5, random.Random(seed))
    st_ = build_sofic_tower(f, 2, 3)
    assert validate_tower(st_.tower)
    for anchor, R in zip(st_.anchors, st_.partitions):
        psi = st_.tower.levels[anchor]
        assert psi.values == quotient(f, R).values
        for k in (1, 2):
            assert quotient_set(psi, k).issubset(quotient_set(f, k))
    for row in verify_sofic_guarantee(st_, f):
        assert row["exact_ok"] and row["direct_ok"]


def test_sofic_rejects_bad_parameters():
    with pytest.raises(DomainError):
        build_sofic_tower(rho(3, 1), 0, 2)


# -- clopen limit ----------------------------------------------------------------

def test_clopen_examples():
    t = gen.random_tower(random.Random(9))
    L = ClopenLimit(t)
    total = t.levels[0].total
    for depth in range(1, L.depth + 1):
        assert clopen_evaluate(L, depth, 0) == 0
        assert clopen_evaluate(L, depth, (1 << L.ground_size(depth)) - 1) == total
    for depth in range(1, L.depth):
        for S in range(1 << L.ground_size(depth)):
            assert clopen_evaluate(L, depth, S) == clopen_evaluate(L, depth + 1, L.preimage(depth, S))
    with pytest.raises(DomainError):
        clopen_evaluate(L, 0, 0)
    with pytest.raises(DomainError):
        clopen_evaluate(L, L.depth + 1, 0)


def test_clopen_lattice_operations():
    L = ClopenLimit(gen.random_tower(random.Random(2), levels=3, max_ground=6))
    U, V = ClopenSet(1, 1), ClopenSet(2, 0b10)
    W = L.union(U, V)
    assert W.depth == 2 and W.mask == L.lift(U, 2).mask | 0b10
    assert L.intersection(U, L.complement(U)).mask == 0
    assert L.evaluate(L.lift(U, L.depth)) == L.evaluate(U)
    with pytest.raises(DomainError):
        L.lift(V, 1)


def test_clopen_rejects_invalid_tower():
    with pytest.raises(DomainError):
        ClopenLimit(Tower((rho(2, 1), rho(4, 2)), ((0, 0, 0, 1),)))


def test_limit_quotient_sets_match_levels():
    t = gen.random_tower(random.Random(6))
    L = ClopenLimit(t)
    assert len(limit_quotient_set(L, 1, 3)) == 1
    for k in (1, 2, 3):
        sets = [limit_quotient_set(L, k, d) for d in range(1, L.depth + 1)]
        assert sets[0] == quotient_set(t.levels[0], k)
        assert all(a.issubset(b) for a, b in zip(sets, sets[1:])) == tower_profile_check(t, k)

import itertools
import random
import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from quotient_convergence import generators as gen
from quotient_convergence.core import BudgetError, DomainError, SymmetricSetFunction, mask_of, popcount
from quotient_convergence.matroid import (
    SparsePavingFamily,
    check_rank_axioms,
    contract,
    delete,
    fano_matrix,
    gf2_rank,
    graphic_rank,
    has_u24_minor_bruteforce,
    is_binary_via_Q6,
    normalize,
    q6_has_u24_pattern,
    random_sparse_paving_family,
    rank_table,
    sparse_paving_rank,
    uniform_rank,
)
from quotient_convergence.profile import quotient_set


def forest_rank(edges, F_mask):
    """Rank via BFS components: |V(F)| - comps(F), loops contribute nothing."""
    sel = [e for i, e in enumerate(edges) if F_mask >> i & 1]
    verts = {v for e in sel for v in e}
    adj = {v: set() for v in verts}
    for u, v in sel:
        adj[u].add(v)
        adj[v].add(u)
    seen, comps = set(), 0
    for v in verts:
        if v in seen:
            continue
        comps += 1
        stack = [v]
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(adj[x] - seen)
    return len(verts) - comps


def gf2_oracle_rank(cols):
    rows = [list(c) for c in cols]
    rank = 0
    width = max((len(c) for c in rows), default=0)
    for bit in range(width):
        piv = next((r for r in rows if r[bit]), None)
        if piv is None:
            continue
        rows.remove(piv)
        rows = [[a ^ b for a, b in zip(r, piv)] if r[bit] else r for r in rows]
        rank += 1
    return rank


def test_uniform_examples():
    assert uniform_rank(4, 2).rank(mask_of([0, 1, 2])) == 2
    assert all(uniform_rank(5, 0).rank(X) == 0 for X in range(32))
    assert all(uniform_rank(5, 5).rank(X) == popcount(X) for X in range(32))
    with pytest.raises(DomainError):
        uniform_rank(3, 4)
    with pytest.raises(DomainError):
        uniform_rank(3, 1).rank(8)


def test_sparse_paving_examples():
    assert all(
        sparse_paving_rank(SparsePavingFamily(5, 3)).rank(X) == uniform_rank(5, 3).rank(X) for X in range(32)
    )
    M = sparse_paving_rank(SparsePavingFamily(4, 2, frozenset({0b0011})))
    assert M.rank(0b0011) == 1
    assert M.rank(0b0101) == 2


def test_sparse_paving_family_validation():
    with pytest.raises(DomainError):
        SparsePavingFamily(5, 3, frozenset({0b00111, 0b01011}))  # share 2 > r - 2
    with pytest.raises(DomainError):
        SparsePavingFamily(5, 3, frozenset({0b011}))
    with pytest.raises(DomainError):
        SparsePavingFamily(3, 3, frozenset({0b111}))


def test_graphic_examples():
    K3 = graphic_rank([(0, 1), (1, 2), (0, 2)])
    assert K3.rank(0b111) == 2 and K3.rank(0) == 0
    K4 = graphic_rank(gen.graph_list()["K4"])
    assert K4.rank(0b100001) == 2  # (0,1) and (2,3)


@given(st.integers(0, 2**32 - 1))
def test_graphic_matches_bfs(seed):
    r = random.Random(seed)
    edges = [(r.randrange(5), r.randrange(5)) for _ in range(r.randint(1, 8))]
    M = graphic_rank(edges)
    for X in range(1 << len(edges)):
        assert M.rank(X) == forest_rank(edges, X)


def test_gf2_examples():
    I = gf2_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert all(I.rank(X) == popcount(X) for X in range(8))
    fano = gf2_rank(fano_matrix())
    # columns are the vectors 1..7; 1 ^ 2 ^ 3 == 0
    assert fano.rank(0b0000111) == 2
    assert gf2_rank([[1, 1], [0, 0]]).rank(0b11) == 1


@given(st.integers(0, 2**32 - 1))
def test_gf2_matches_elimination(seed):
    r = random.Random(seed)
    n, m = r.randint(1, 7), r.randint(1, 4)
    mat = [[r.randint(0, 1) for _ in range(n)] for _ in range(m)]
    M = gf2_rank(mat)
    for X in range(1 << n):
        cols = [[mat[i][j] for i in range(m)] for j in range(n) if X >> j & 1]
        assert M.rank(X) == gf2_oracle_rank(cols)


def test_minor_examples():
    U = uniform_rank(4, 2)
    C = contract(U, 0b0001)
    assert C.n == 3 and C.rank(0b011) == 1  # elements 2, 3 of the original
    assert delete(U, 0) is U and contract(U, 0) is U
    with pytest.raises(DomainError):
        delete(U, 0b10000)


@given(st.integers(0, 2**32 - 1))
def test_minor_formulas(seed):
    r = random.Random(seed)
    M = gen.random_gf2_matroid(r, max_elements=7)
    A = r.getrandbits(M.n)
    keep = [e for e in range(M.n) if not A >> e & 1]

    def up(X):
        return sum(1 << keep[i] for i in range(len(keep)) if X >> i & 1)

    D, C = delete(M, A), contract(M, A)
    for X in range(1 << len(keep)):
        assert D.rank(X) == M.rank(up(X))
        assert C.rank(X) == M.rank(up(X) | A) - M.rank(A)
    assert check_rank_axioms(D) and check_rank_axioms(C)


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_constructed_oracles_satisfy_axioms(seed):
    r = random.Random(seed)
    assert check_rank_axioms(gen.random_gf2_matroid(r))
    n = r.randint(2, 10)
    k = r.randint(1, n - 1)
    assert check_rank_axioms(sparse_paving_rank(random_sparse_paving_family(n, k, r)))


def test_graphic_corpus_satisfies_axioms():
    for M in gen.graphic_corpus().values():
        assert check_rank_axioms(M)


def test_normalize_examples():
    rho = normalize(uniform_rank(4, 2))
    assert isinstance(rho, SymmetricSetFunction)
    assert rho.total == F(1, 2)
    assert all(normalize(uniform_rank(5, 5)).evaluate(X) == F(popcount(X), 5) for X in range(32))
    g = normalize(gf2_rank(fano_matrix()))
    assert g.evaluate(0b1111111) == F(3, 7)
    with pytest.raises(DomainError):
        normalize(uniform_rank(0, 0))


@given(st.integers(0, 2**32 - 1))
def test_sparse_paving_sandwich(seed):
    r = random.Random(seed)
    n = r.randint(2, 10)
    k = r.randint(1, n - 1)
    rh = normalize(sparse_paving_rank(random_sparse_paving_family(n, k, r)))
    ru = normalize(uniform_rank(n, k)).to_table()
    for X in range(1 << n):
        assert ru.evaluate(X) - F(1, n) <= rh.evaluate(X) <= ru.evaluate(X)


def test_binary_examples():
    assert not is_binary_via_Q6(uniform_rank(4, 2))
    assert has_u24_minor_bruteforce(uniform_rank(4, 2))
    assert is_binary_via_Q6(gf2_rank(fano_matrix()))
    assert not has_u24_minor_bruteforce(gf2_rank(fano_matrix()))
    K4 = graphic_rank(gen.graph_list()["K4"])
    assert is_binary_via_Q6(K4) and not has_u24_minor_bruteforce(K4)
    assert not has_u24_minor_bruteforce(uniform_rank(4, 3))
    assert not is_binary_via_Q6(uniform_rank(6, 3))


def test_binary_small_ground_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert is_binary_via_Q6(uniform_rank(3, 2))
    assert caught


def test_bruteforce_cap():
    with pytest.raises(BudgetError):
        has_u24_minor_bruteforce(uniform_rank(15, 2))


def test_graphic_up_to_ten_edges_have_no_minor():
    r = random.Random(5)
    for _ in range(3):
        edges = [(r.randrange(6), r.randrange(6)) for _ in range(10)]
        assert not has_u24_minor_bruteforce(graphic_rank(edges))


@settings(max_examples=20)
@given(st.integers(0, 2**32 - 1))
def test_q6_routes_agree_on_small_matroids(seed):
    r = random.Random(seed)
    choice = r.randrange(3)
    if choice == 0:
        M = gen.random_gf2_matroid(r, max_elements=7)
    elif choice == 1:
        n = r.randint(4, 7)
        M = sparse_paving_rank(random_sparse_paving_family(n, r.randint(1, n - 1), r))
    else:
        n = r.randint(4, 7)
        M = uniform_rank(n, r.randint(0, n))
    verdict = is_binary_via_Q6(M)
    assert verdict == (not has_u24_minor_bruteforce(M))
    assert verdict == (not q6_has_u24_pattern(quotient_set(rank_table(M), 6)))


def test_q6_pattern_requires_k6():
    with pytest.raises(DomainError):
        q6_has_u24_pattern(quotient_set(rank_table(uniform_rank(4, 2)), 2))


def test_uniform_minor_table():
    # U(r, n) has a U(2,4) minor iff 2 <= r <= n - 2
    for n, r in itertools.product(range(4, 8), range(0, 8)):
        if r <= n:
            assert has_u24_minor_bruteforce(uniform_rank(n, r)) == (2 <= r <= n - 2)

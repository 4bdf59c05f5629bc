from itertools import chain, combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import triple_loop_constants
from schemeprod import fixtures
from schemeprod.action import full_action, trivial_action
from schemeprod.category import validate_morphism
from schemeprod.closure import (
    as_closed,
    closure_of,
    cosets,
    enumerate_closed_subsets,
    is_closed,
    is_normal,
    quotient,
    subscheme,
)
from schemeprod.errors import NotClosed
from schemeprod.scheme import is_thin, valencies
from schemeprod.semidirect import semidirect_product

K1, K2, K3 = {0, 3}, {0, 1}, {0, 1, 3, 4}


def fixture_schemes(s12):
    T, U = fixtures.t3(), fixtures.u4()
    return [
        T, U, fixtures.klein(), fixtures.point(), s12,
        semidirect_product(trivial_action(U, T)).scheme,
        semidirect_product(full_action(U, T)).scheme,
    ]


def subsets_of(r):
    rels = range(r)
    return chain.from_iterable(combinations(rels, k) for k in range(r + 1))


def test_closure_examples(s12):
    assert closure_of(s12, {2}).members == frozenset(range(6))
    assert closure_of(s12, {5}).members == frozenset(range(6))
    assert closure_of(s12, set()).members == {0}
    assert closure_of(s12, {1, 3}).members == K3


def test_closed_subset_rejects_non_closed(s12):
    with pytest.raises(NotClosed):
        as_closed(s12, {0, 2})


def test_s12_census(s12):
    found = [set(T.members) for T in enumerate_closed_subsets(s12)]
    assert found == [{0}, K2, K1, K3, set(range(6))]


def test_t3_and_u4_census():
    assert [set(T.members) for T in enumerate_closed_subsets(fixtures.t3())] == [{0}, {0, 1}]
    u4 = enumerate_closed_subsets(fixtures.u4())
    assert [len(T.members) for T in u4] == [1, 2, 4]
    assert set(u4[1].members) == {0, 2}


def test_klein_has_five_closed_subsets():
    assert len(enumerate_closed_subsets(fixtures.klein())) == 5


def test_exhaustive_and_frontier_enumeration_agree(s12):
    for S in fixture_schemes(s12):
        a = enumerate_closed_subsets(S, exhaustive=True)
        b = enumerate_closed_subsets(S, exhaustive=False)
        assert [T.members for T in a] == [T.members for T in b]


def test_enumeration_matches_brute_force(s12):
    for S in fixture_schemes(s12):
        brute = {frozenset(P) for P in subsets_of(S.r) if 0 in P and is_closed(S, P)}
        assert {T.members for T in enumerate_closed_subsets(S)} == brute


def test_normality_examples(s12):
    for T in (K1, K2, K3, {0}, set(range(6))):
        assert is_normal(s12, as_closed(s12, T))


def test_subscheme_at_basepoint_is_t3(s12):
    sub = subscheme(s12, K2, s12.basepoint)
    assert sub.scheme == fixtures.t3()
    assert sub.points == (0, 1, 2)
    assert subscheme(s12, {0}, 5).scheme.n == 1


def test_k3_subscheme_constants(s12):
    sub = subscheme(s12, K3, s12.basepoint)
    assert (sub.scheme.n, sub.scheme.r) == (6, 4)
    assert sub.relations == (0, 1, 3, 4)
    p, q = sub.relations.index(1), sub.relations.index(4)   # [0,t] and [2,t]
    assert sub.scheme.constants[p][p][p] == 1
    assert sub.scheme.constants[q][q][q] == 0


def test_quotient_examples(s12):
    Q = quotient(s12, K2)
    assert (Q.scheme.n, Q.scheme.r) == (4, 4) and is_thin(Q.scheme)
    Q3 = quotient(s12, K3)
    assert (Q3.scheme.n, Q3.scheme.r) == (2, 2)
    same = quotient(s12, {0})
    assert same.scheme == s12 and same.rel_map == tuple(range(6))


def test_projection_is_morphism_with_kernel(s12):
    for T in (K1, K2, K3):
        Q = quotient(s12, T)
        pi = validate_morphism(s12, Q.scheme, Q.block_of)
        assert set(pi.kernel.members) == T


def test_quotients_and_subschemes_are_schemes(s12):
    for S in fixture_schemes(s12):
        for T in enumerate_closed_subsets(S):
            Q = quotient(S, T)
            assert [[list(r) for r in pl] for pl in Q.scheme.constants] == \
                triple_loop_constants([list(r) for r in Q.scheme.color])
            assert sorted(set(Q.rel_map)) == list(range(Q.scheme.r))
            assert Q.scheme.basepoint == Q.block_of[S.basepoint]
            part = cosets(S, T)
            assert sum(len(b) for b in part.blocks) == S.n
            for b in part.blocks:
                sub = subscheme(S, T, b[0])
                assert sub.scheme.n == len(b) == T.valency
                assert quotient(sub.scheme, range(sub.scheme.r)).scheme.n == 1


def test_closedness_transfers_to_quotient(s12):
    for S in fixture_schemes(s12):
        for T in enumerate_closed_subsets(S):
            Q = quotient(S, T)
            for R in subsets_of(S.r):
                R = set(R)
                if not T.members <= R:
                    continue
                image = {Q.rel_map[s] for s in R}
                full_preimage = {s for s in range(S.r) if Q.rel_map[s] in image}
                if full_preimage != R:
                    # R is not a union of T-double-coset classes; only its
                    # saturation has a meaningful image
                    assert not is_closed(S, R)
                    continue
                assert is_closed(S, R) == is_closed(Q.scheme, image)


def test_normality_transfers_to_quotient(s12):
    for S in fixture_schemes(s12):
        closed = enumerate_closed_subsets(S)
        for T in closed:
            Q = quotient(S, T)
            for U in closed:
                if T.members <= U.members:
                    image = as_closed(Q.scheme, {Q.rel_map[s] for s in U.members})
                    assert is_normal(S, U) == is_normal(Q.scheme, image)


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(0, 5)), st.sets(st.integers(0, 5)))
def test_closure_idempotent_and_monotone(seed, extra):
    S = semidirect_product(fixtures.example_action()).scheme
    c = closure_of(S, seed)
    assert closure_of(S, c.members) == c
    assert seed <= c.members and 0 in c.members
    assert c.members <= closure_of(S, seed | extra).members


def test_valency_of_closed_subsets(s12):
    v = valencies(s12)
    assert [as_closed(s12, T).valency for T in (K1, K2, K3)] == [
        sum(v[s] for s in T) for T in (K1, K2, K3)]

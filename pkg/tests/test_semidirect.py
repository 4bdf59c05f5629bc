from itertools import product

import pytest

from conftest import ACTION_NAMES, fixture_actions
from oracles import (
    direct_product_matrix,
    same_partition,
    triple_loop_constants,
    wreath_matrix,
)
from schemeprod import fixtures
from schemeprod.closure import as_closed, is_normal, quotient, subscheme
from schemeprod.iso import find_isomorphism
from schemeprod.scheme import complex_product, is_thin, valencies
from schemeprod.semidirect import (
    SplitData,
    canonical_split,
    counting_table,
    relation_label,
    semidirect_product,
    split_is_iso,
    verify_split_condition,
)

PRODUCTS = {name: semidirect_product(act) for name, act in fixture_actions().items()}


def test_relation_label_examples(actions):
    act = actions["example"]
    assert relation_label(act, 0, 0) == (0, frozenset({0}))
    assert relation_label(act, 0, 1) == (0, frozenset({1}))
    # (a,0) -> (b,0): u = 1 and the class collapses t with 1
    assert relation_label(act, 0, 3) == (1, frozenset({0, 1}))
    assert relation_label(act, 0, 4) == relation_label(act, 0, 3)


def test_example_product_shape(s12_product):
    S = s12_product.scheme
    assert (S.n, S.r) == (12, 6)
    assert sorted(valencies(S)) == [1, 1, 2, 2, 3, 3]
    assert s12_product.labels[0] == (0, frozenset({0}))
    lk = s12_product.label_lookup
    assert lk(1, 1) == lk(1, 0) and lk(3, 1) == lk(3, 0)
    assert lk(2, 1) != lk(2, 0)


def test_label_text(s12_product):
    lines = s12_product.label_text().splitlines()
    assert lines[0] == "0 0 0" and lines[2] == "2 1 0 1"
    assert len(lines) == 6


@pytest.mark.parametrize("name", ACTION_NAMES)
def test_product_constants_match_triple_loop(name):
    S = PRODUCTS[name].scheme
    oracle = triple_loop_constants([list(r) for r in S.color])
    assert [[list(r) for r in pl] for pl in S.constants] == oracle


@pytest.mark.parametrize("name", ACTION_NAMES)
def test_counting_formula_matches_triple_loop(name):
    sd = PRODUCTS[name]
    oracle = triple_loop_constants([list(r) for r in sd.scheme.color])
    assert counting_table(sd) == oracle


def test_direct_product_oracle():
    U, T = fixtures.u4(), fixtures.t3()
    sd = PRODUCTS["trivial_u4_t3"]
    S = sd.scheme
    assert S.r == 8
    oracle = direct_product_matrix(U.color, T.color)
    assert same_partition(S.color, oracle)
    for (p, lp), (q, lq), (s, ls) in product(enumerate(sd.labels), repeat=3):
        (u1, c1), (u2, c2), (u3, c3) = lp, lq, ls
        t1, t2, t3 = min(c1), min(c2), min(c3)
        assert S.constants[p][q][s] == U.constants[u1][u2][u3] * T.constants[t1][t2][t3]


def test_wreath_oracle():
    U, T = fixtures.u4(), fixtures.t3()
    S = PRODUCTS["full_u4_t3"].scheme
    assert S.r == 5 and sorted(valencies(S)) == [1, 2, 3, 3, 3]
    assert same_partition(S.color, wreath_matrix(U.color, T.color))
    K = fixtures.klein()
    assert same_partition(PRODUCTS["full_klein_t3"].scheme.color, wreath_matrix(K.color, T.color))


@pytest.mark.parametrize("name", ACTION_NAMES)
def test_involution_law(name):
    sd = PRODUCTS[name]
    act, S = sd.action, sd.scheme
    tau = act.tau
    for s, (u, cls) in enumerate(sd.labels):
        t = min(cls)
        us = act.u_scheme.star[u]
        # any member of zeta_{u*}({t*}) names the class of the reversed pairs
        for t_hat_star in act.zeta_u(us, {tau.star[t]}):
            assert S.star[s] == sd.label_lookup(us, t_hat_star)


@pytest.mark.parametrize("name", ACTION_NAMES)
def test_product_law(name):
    sd = PRODUCTS[name]
    for u in range(sd.action.u_scheme.r):
        for t in range(sd.action.tau.r):
            left = sd.label_lookup(u, 0)
            right = sd.label_lookup(0, t)
            assert complex_product(sd.scheme, {left}, {right}) == {sd.label_lookup(u, t)}


@pytest.mark.parametrize("name", ACTION_NAMES)
def test_canonical_split_properties(name):
    sd = PRODUCTS[name]
    split = canonical_split(sd)
    S = sd.scheme
    assert is_normal(S, split.t_tilde)
    sub = subscheme(S, split.t_tilde, S.basepoint)
    assert find_isomorphism(sd.action.t_scheme, sub.scheme, based=True) is not None
    assert split_is_iso(split)
    assert verify_split_condition(split)
    Q = quotient(S, split.t_tilde)
    composite = [Q.block_of[z] for z in split.i_map]
    assert sorted(composite) == list(range(Q.scheme.n))


def test_canonical_split_of_example(s12_product):
    split = canonical_split(s12_product)
    assert split.t_tilde.members == {0, 1}
    assert split.i_map == (0, 3, 6, 9)
    assert split.gamma == (0, 1, 2)


def test_canonical_split_degenerate():
    triv = canonical_split(PRODUCTS["trivial_u4_t3"])
    Q = quotient(triv.s, triv.t_tilde)
    assert find_isomorphism(Q.scheme, fixtures.u4()) is not None
    full = canonical_split(PRODUCTS["full_u4_t3"])
    assert full.t_tilde.members == {0, 1}
    Qf = quotient(full.s, full.t_tilde).scheme
    assert Qf.r == 4 and is_thin(Qf)


def test_k1_with_canonical_points_is_not_a_split(s12):
    split = SplitData(s12, as_closed(s12, {0, 3}), (0, 3, 6, 9), fixtures.u4())
    assert not (split_is_iso(split) and verify_split_condition(split))
    assert not split_is_iso(split)

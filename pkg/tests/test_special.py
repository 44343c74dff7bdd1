import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import S3_THREE_CYCLES, S3_TRANSPOSITIONS, cyclic_table
from towerlab.autgroup import automorphism_group
from towerlab.catalog import build_catalog, catalog_group
from towerlab.encodings import encode_fragment
from towerlab.errors import BaseNotSpecial, CentralizerNontrivial, HypothesesFail
from towerlab.groups import Subgroup, index2_subgroups, subgroup_generated, validate_group
from towerlab.special import (
    are_equivalent,
    build_example4,
    check_mylemma,
    check_special_ind,
    equivalence_classes,
    example4_candidates,
    fragment_separation,
    is_special_pair,
    is_weakly_special,
    restriction_injectivity,
    type_fragment,
    weak_equivalence_classes,
)
from towerlab.towers import automorphism_tower
from towerlab.words import Word, evaluate_word

UP_TO_24 = [e.group for e in build_catalog(24)]
Z3 = validate_group(cyclic_table(3), "Z3")


def _reflections(G):
    return [g for g in G.elements() if G.element_order(g) == 2]


def test_fragment_of_identity_contains_x(s3):
    frag = type_fragment(s3, [1], 0, 1)
    assert Word.var("x") in frag.as_set()


def test_fragment_order_three_relation():
    frag = type_fragment(Z3, [0], 1, 3)
    assert Word.var("x", 3) in frag.as_set()
    assert Word.var("x", 2) not in frag.as_set()


def test_fragment_words_really_vanish(s3):
    frag = type_fragment(s3, [1], 3, 3)
    assert frag.words
    assert all(evaluate_word(s3, w, 3) == 0 for w in frag.words)
    assert Word() not in frag.as_set()


def test_inequivalent_fragments_differ_by_2n(s3):
    for x, y in itertools.combinations(range(6), 2):
        if not are_equivalent(s3, [1], x, y):
            L, agree = fragment_separation(s3, [1], x, y)
            assert not agree and L <= 12
            fx = type_fragment(s3, [1], x, L).as_set()
            fy = type_fragment(s3, [1], y, L).as_set()
            assert fx != fy


@pytest.mark.parametrize("G", [g for g in UP_TO_24 if g.order <= 8], ids=lambda G: G.name)
def test_separation_dp_matches_explicit_fragments(G):
    # explicit word lists at small L against the value-pair search
    rng = random.Random(G.order)
    for _ in range(6):
        A = rng.sample(range(G.order), 1)
        x, y = rng.randrange(G.order), rng.randrange(G.order)
        for L in (1, 2, 3):
            same = type_fragment(G, A, x, L).as_set() == type_fragment(G, A, y, L).as_set()
            first_diff, agree = fragment_separation(G, A, x, y, max_len=L)
            assert same == (agree or first_diff > L)


def test_reflexive(s3):
    assert all(are_equivalent(s3, [], g, g) for g in s3.elements())


def test_z3_over_identity():
    assert are_equivalent(Z3, [0], 1, 2)
    assert not is_special_pair(Z3, [0])


def test_s3_over_itself(s3):
    assert all(not are_equivalent(s3, range(6), x, y) for x, y in itertools.combinations(range(6), 2))


@pytest.mark.parametrize("G", UP_TO_24, ids=lambda G: G.name)
def test_whole_group_is_special(G):
    assert is_special_pair(G, G.elements())


def test_aut_s3_over_inner(s3):
    aut = automorphism_group(s3)
    assert is_special_pair(aut.group, aut.inner.map)


def test_weakly_special_examples(s3, d5):
    assert is_weakly_special(s3, range(6))
    assert not is_weakly_special(d5, [0])


def test_d5_rotations_conjugate_over_identity(d5):
    classes = weak_equivalence_classes(d5, [0])
    rotations = [g for g in d5.elements() if d5.element_order(g) == 5]
    assert any(len(set(c) & set(rotations)) >= 2 for c in classes)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_e_is_an_equivalence(data):
    G = data.draw(st.sampled_from(UP_TO_24))
    A = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    x, y, z = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    xy, yx = are_equivalent(G, A, x, y), are_equivalent(G, A, y, x)
    assert xy == yx
    if xy and are_equivalent(G, A, y, z):
        assert are_equivalent(G, A, x, z)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_classes_partition_and_agree_with_pairwise(data):
    G = data.draw(st.sampled_from([g for g in UP_TO_24 if g.order <= 12]))
    A = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    classes = equivalence_classes(G, A)
    assert sorted(g for c in classes for g in c) == list(G.elements())
    label = {g: i for i, c in enumerate(classes) for g in c}
    for x in G.elements():
        for y in G.elements():
            assert (label[x] == label[y]) == are_equivalent(G, A, x, y)


@pytest.mark.parametrize("name", [e.name for e in build_catalog(60) if e.centerless])
def test_weak_refines_e_and_special_implies_weak(name):
    G = catalog_group(name)
    T = automorphism_tower(G)
    rng = random.Random(len(name))
    for _ in range(3):
        A = sorted(rng.sample(range(G.order), rng.randint(1, 2)))
        e_label = {g: i for i, c in enumerate(equivalence_classes(G, A)) for g in c}
        for c in weak_equivalence_classes(G, A, tower=T):
            assert len({e_label[g] for g in c}) == 1
        if is_special_pair(G, A):
            assert is_weakly_special(G, A, tower=T)


def test_mylemma_inner_in_aut(s3):
    aut = automorphism_group(s3)
    inn = aut.inner.image()
    rep = check_mylemma(aut.group, inn, inn.elements)
    assert rep.hypotheses_hold and rep.conclusion_holds


def test_mylemma_vacuous_on_abelian():
    C4 = catalog_group("C4")
    rep = check_mylemma(C4, Subgroup(C4, tuple(C4.elements())), [0])
    assert not rep.hypotheses_hold
    assert not rep.centralizer_trivial
    assert rep.implication_holds


def test_restriction_injectivity_examples(s3, d5):
    assert restriction_injectivity(automorphism_tower(s3), range(6))
    T = automorphism_tower(d5)
    refl = _reflections(d5)
    pair = refl[:2]
    assert subgroup_generated(d5, pair).order == 10
    assert restriction_injectivity(T, pair)
    with pytest.raises(CentralizerNontrivial) as err:
        restriction_injectivity(T, [0])
    assert err.value.level == 0


def test_special_ind_examples(s3, d5):
    assert check_special_ind(automorphism_tower(s3), range(6)).passed
    rep = check_special_ind(automorphism_tower(d5), range(10))
    assert rep.passed and [o for o, _, _ in rep.levels] == [10, 20]
    with pytest.raises(BaseNotSpecial):
        check_special_ind(automorphism_tower(d5), [0])


def test_example4_needs_two_subgroups(s3):
    with pytest.raises(HypothesesFail) as err:
        example4_candidates(s3)
    assert err.value.condition == "need two"


def test_example4_rejects_equal_subgroups():
    G = catalog_group("S3wrC2")
    H = index2_subgroups(G)[0]
    with pytest.raises(HypothesesFail) as err:
        build_example4(G, H, H)
    assert err.value.condition == "distinctness"


def test_example4_wreath_witness():
    G = catalog_group("S3wrC2")
    pairs = example4_candidates(G)
    assert pairs
    for H1, H2 in pairs:
        wit = build_example4(G, H1, H2)
        assert wit.verified
        assert wit.x1 != wit.x2
        assert wit.to_json()["verified"]


def test_fragments_code_distinct_elements(s3):
    # distinct elements of a special pair get distinct coded fragments
    coded = [encode_fragment(type_fragment(s3, range(6), g, 2).words, 1, 2) for g in s3.elements()]
    assert len(set(coded)) == 6


def test_transposition_and_rotation_labels(s3):
    assert set(S3_TRANSPOSITIONS) | set(S3_THREE_CYCLES) == set(range(1, 6))

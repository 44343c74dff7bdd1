import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    S3_THREE_CYCLES,
    S3_TRANSPOSITIONS,
    center as naive_center,
    closure,
    cyclic_table,
    normalizer as naive_normalizer,
    perm_table,
    symmetric_perms,
)
from towerlab.catalog import build_catalog, cyclic, symmetric
from towerlab.errors import (
    CapExceeded,
    EntryOutOfRange,
    IdentityNotAtZero,
    IndexOutOfRange,
    InvalidSubgroup,
    MissingInverse,
    NotAssociative,
    NotSquare,
)
from towerlab.groups import (
    Subgroup,
    center,
    centralizer,
    check_cap,
    derived_subgroup,
    direct_product,
    index2_subgroups,
    make_subgroup,
    normalizer,
    subgroup_generated,
    validate_group,
)

SMALL = [e.group for e in build_catalog(24)]


def test_trivial_group():
    G = validate_group([[0]], "1")
    assert G.order == 1
    assert G.inverse == (0,)


def test_s3_table_matches_full_associativity_scan(s3):
    t = s3.rows
    assert all(t[t[i][j]][k] == t[i][t[j][k]] for i in range(6) for j in range(6) for k in range(6))
    assert s3.order == 6


def test_no_inverse_rejected():
    with pytest.raises((NotAssociative, MissingInverse)):
        validate_group([[0, 1], [1, 1]])


def test_non_associative_witness():
    # a loop of order 5 that is not a group
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative) as err:
        validate_group(loop)
    i, j, k = err.value.witness
    assert loop[loop[i][j]][k] != loop[i][loop[j][k]]


@pytest.mark.parametrize(
    "table, exc",
    [
        ([[0, 1]], NotSquare),
        ([[0, 1], [1]], NotSquare),
        ([[0, 2], [1, 0]], EntryOutOfRange),
        ([[1, 0], [0, 1]], IdentityNotAtZero),
    ],
)
def test_malformed_tables(table, exc):
    with pytest.raises(exc):
        validate_group(table)


def test_index_checks(s3):
    with pytest.raises(IndexOutOfRange):
        s3.mul(0, 6)
    with pytest.raises(IndexOutOfRange):
        subgroup_generated(s3, [7])


def test_subgroup_generated_examples(s3):
    assert subgroup_generated(s3, []).elements == (0,)
    assert subgroup_generated(s3, [1]).order == 2
    assert subgroup_generated(s3, [1, 3]).order == 6


def test_center_examples(s3):
    assert center(s3).elements == (0,)
    assert center(cyclic(4)).order == 4
    assert centralizer(s3, []).order == 6


def test_normalizer_examples(s3, s4):
    assert normalizer(s3, Subgroup(s3, tuple(range(6)))).order == 6
    # <(0 1)> in S4: permutation (1,0,2,3) sits at index 6
    H = subgroup_generated(s4, [6])
    assert normalizer(s4, H).order == 4
    rot = subgroup_generated(s3, [S3_THREE_CYCLES[0]])
    assert normalizer(s3, rot).order == 6


def test_make_subgroup_rejects_non_subgroups(s3):
    with pytest.raises(InvalidSubgroup):
        make_subgroup(s3, [0, 1, 2])
    with pytest.raises(InvalidSubgroup):
        make_subgroup(s3, [1])


def test_direct_product_examples(s3):
    triv = validate_group([[0]], "1")
    C2 = cyclic(2)
    assert direct_product(triv, s3).rows == s3.rows
    V = direct_product(C2, C2)
    assert V.order == 4
    assert all(V.mul(g, g) == 0 for g in V.elements())
    P = direct_product(s3, C2)
    assert P.order == 12
    assert center(P).order == 2


def test_index2_examples(s3):
    subs = index2_subgroups(s3)
    assert [H.elements for H in subs] == [(0,) + S3_THREE_CYCLES]
    assert len(index2_subgroups(direct_product(cyclic(2), cyclic(2)))) == 3
    assert [H.order for H in index2_subgroups(symmetric(4))] == [12]
    A5 = next(e.group for e in build_catalog(60) if e.name == "A5")
    assert index2_subgroups(A5) == []


def test_index2_against_scan():
    for G in SMALL:
        found = {H.elements for H in index2_subgroups(G)}
        # every index-2 subset containing e that is closed is a subgroup
        expected = set()
        for H in _all_subgroups(G):
            if 2 * len(H) == G.order:
                expected.add(tuple(sorted(H)))
        assert found == expected, G.name


def _all_subgroups(G):
    subs = set()
    for a in G.elements():
        for b in G.elements():
            subs.add(frozenset(closure(G.rows, [a, b])))
    return subs


def test_derived_subgroup_of_s4(s4):
    assert derived_subgroup(s4).order == 12


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_center_matches_scan(G):
    assert set(center(G).elements) == naive_center(G.rows)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_generated_subgroup_is_idempotent_and_matches_closure(data):
    G = data.draw(st.sampled_from(SMALL))
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    H = subgroup_generated(G, gens)
    assert set(H.elements) == closure(G.rows, gens)
    assert subgroup_generated(G, H.elements).elements == H.elements


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_normalizer_contains_subgroup(data):
    G = data.draw(st.sampled_from(SMALL))
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    H = subgroup_generated(G, gens)
    N = normalizer(G, H)
    assert set(H.elements) <= set(N.elements)
    assert set(N.elements) == naive_normalizer(G.rows, H.elements)
    make_subgroup(G, N.elements)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_centralizer_is_antitone(data):
    G = data.draw(st.sampled_from(SMALL))
    S = data.draw(st.sets(st.integers(0, G.order - 1), max_size=3))
    extra = data.draw(st.sets(st.integers(0, G.order - 1), max_size=2))
    assert set(centralizer(G, S | extra).elements) <= set(centralizer(G, S).elements)


def test_catalog_tables_satisfy_axioms_by_scan():
    rng = random.Random(3)
    for G in SMALL:
        t = G.rows
        n = G.order
        for _ in range(200):
            i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            assert t[t[i][j]][k] == t[i][t[j][k]]
        assert all(t[0][j] == j and t[j][0] == j for j in range(n))
        assert all(t[i][G.inverse[i]] == 0 == t[G.inverse[i]][i] for i in range(n))


def test_table_is_read_only(s3):
    with pytest.raises(ValueError):
        s3.table[0, 0] = 1


def test_cap(monkeypatch):
    check_cap("x", 200)
    with pytest.raises(CapExceeded):
        check_cap("x", 201)
    monkeypatch.setenv("TOWERLAB_CAP", "500")
    check_cap("x", 400)


def test_s3_transposition_labels(s3):
    assert all(s3.element_order(t) == 2 for t in S3_TRANSPOSITIONS)
    assert all(s3.element_order(c) == 3 for c in S3_THREE_CYCLES)
    table, _ = perm_table(symmetric_perms(3))
    assert np.array_equal(s3.table, np.array(table))


def test_cyclic_matches_addition_table():
    assert cyclic(7).rows == tuple(tuple(r) for r in cyclic_table(7))

import pytest

from oracles import brute_automorphisms, cyclic_table, element_order
from towerlab.autgroup import (
    automorphism_group,
    brute_force_automorphisms,
    compose,
    greedy_generators,
    inner_permutation,
    is_automorphism,
    is_complete,
    pointwise_automorphisms,
    search_automorphisms,
)
from towerlab.catalog import build_catalog, cyclic
from towerlab.errors import CapExceeded
from towerlab.groups import direct_product, subgroup_generated, validate_group

UP_TO_8 = [e.group for e in build_catalog(8)]
UP_TO_24 = [e.group for e in build_catalog(24)]
UP_TO_72 = [e.group for e in build_catalog(72)]


def test_c2_has_trivial_aut():
    assert automorphism_group(cyclic(2)).order == 1


def test_klein_four_aut_is_s3():
    V = direct_product(cyclic(2), cyclic(2))
    aut = automorphism_group(V)
    assert aut.order == 6
    assert aut.perms == tuple(brute_automorphisms(V.rows))
    # nonabelian of order 6: S3
    G = aut.group
    assert any(G.mul(a, b) != G.mul(b, a) for a in G.elements() for b in G.elements())


def test_s3_aut_is_inner(s3):
    aut = automorphism_group(s3)
    assert aut.order == 6
    assert aut.inner.is_injective and aut.inner.is_surjective
    assert aut.perms == tuple(brute_automorphisms(s3.rows))


def test_is_complete_examples(s3):
    assert is_complete(validate_group([[0]]))
    assert is_complete(s3)
    assert not is_complete(validate_group(cyclic_table(3)))


@pytest.mark.parametrize("G", UP_TO_8, ids=lambda G: G.name)
def test_search_matches_bijection_oracle(G):
    assert search_automorphisms(G) == brute_force_automorphisms(G) == brute_automorphisms(G.rows)


@pytest.mark.parametrize("G", UP_TO_72, ids=lambda G: G.name)
def test_search_matches_pointwise_oracle(G):
    assert search_automorphisms(G) == pointwise_automorphisms(G)


@pytest.mark.parametrize("G", UP_TO_72, ids=lambda G: G.name)
def test_aut_soundness_and_closure(G):
    aut = automorphism_group(G)
    t = G.rows
    for p in aut.perms:
        assert all(p[t[i][j]] == t[p[i]][p[j]] for i in range(0, G.order, 3) for j in range(G.order))
    T = aut.group.rows
    for i in range(0, aut.order, max(1, aut.order // 12)):
        for j in range(aut.order):
            assert compose(aut.perms[i], aut.perms[j]) == aut.perms[T[i][j]]


@pytest.mark.parametrize("G", UP_TO_24, ids=lambda G: G.name)
def test_inner_map_is_conjugation_and_homomorphism(G):
    aut = automorphism_group(G)
    for g in G.elements():
        p = aut.perms[aut.inner.map[g]]
        assert p == tuple(G.mul(G.mul(g, h), G.inv(g)) for h in G.elements())
    m = aut.inner.map
    T = aut.group
    assert all(T.mul(m[g], m[h]) == m[G.mul(g, h)] for g in G.elements() for h in G.elements())
    assert aut.inner.is_homomorphism


def test_greedy_generators_generate():
    for G in UP_TO_72:
        gens = greedy_generators(G)
        assert subgroup_generated(G, gens).order == G.order
        assert len(gens) <= 4


def test_aut_respects_cap(monkeypatch):
    monkeypatch.setenv("TOWERLAB_CAP", "10")
    with pytest.raises(CapExceeded):
        automorphism_group(cyclic(12))


def test_automorphisms_preserve_element_orders(d5):
    aut = automorphism_group(d5)
    for p in aut.perms:
        assert all(element_order(d5.rows, p[g]) == element_order(d5.rows, g) for g in d5.elements())
    assert aut.order == 20


def test_is_automorphism_rejects(s3):
    assert is_automorphism(s3, inner_permutation(s3, 3))
    assert not is_automorphism(s3, (0, 2, 1, 3, 4, 5))
    assert not is_automorphism(s3, (0, 0, 1, 2, 3, 4))

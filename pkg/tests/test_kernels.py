import itertools

import pytest

from oracles import S3_THREE_CYCLES
from towerlab.autgroup import automorphism_group
from towerlab.catalog import catalog_group
from towerlab.errors import MissingAssignment, NotSpecial
from towerlab.kernels import (
    KernelOracle,
    find_affiliation,
    kernel_contains,
    kernel_injectivity,
    separating_word,
    verify_reconstruction,
)
from towerlab.special import are_equivalent
from towerlab.words import Word, evaluate_word


def test_kernel_membership(s3):
    K = KernelOracle.build(s3, range(6), S3_THREE_CYCLES[0])
    assert kernel_contains(K, Word())
    assert kernel_contains(K, Word.of("x", ("x", -1)))
    assert kernel_contains(K, Word.var("x", 3))
    assert not kernel_contains(K, Word.var("x", 2))


def test_missing_assignment(s3):
    K = KernelOracle.build(s3, [1], 3)
    with pytest.raises(MissingAssignment):
        kernel_contains(K, Word.var("y"))


def test_injectivity_examples(s3):
    assert kernel_injectivity(s3, range(6))
    aut = automorphism_group(s3)
    assert kernel_injectivity(aut.group, aut.inner.map)
    with pytest.raises(NotSpecial):
        kernel_injectivity(catalog_group("C3"), [0])


def test_separating_words_agree_with_e(d5):
    for A in ([1], [0], list(range(10))):
        for g1, g2 in itertools.combinations(range(10), 2):
            w = separating_word(d5, A, g1, g2)
            assert (w is None) == are_equivalent(d5, A, g1, g2)
            if w is not None:
                v1, v2 = evaluate_word(d5, w, g1), evaluate_word(d5, w, g2)
                assert (v1 == 0) != (v2 == 0)


def test_affiliation_prefers_parameters_and_y(s3):
    K = KernelOracle.build(s3, [1], 3, 2)
    a = find_affiliation(K, 1)
    assert a.witness == Word.param(1)
    h = find_affiliation(K, 2)
    assert h.witness == Word.var("y")
    for g in s3.elements():
        aff = find_affiliation(K, g)
        if aff is not None:
            assert evaluate_word(s3, aff.witness, 3, 2) == g


def test_affiliation_absent(s3):
    K = KernelOracle.build(s3, [], S3_THREE_CYCLES[0], 0)
    assert find_affiliation(K, 1) is None
    with pytest.raises(ValueError):
        find_affiliation(K, 1, bound=0)


@pytest.mark.parametrize("name", ["S3", "D5"])
def test_reconstruction_recovers_every_automorphism(name):
    G = catalog_group(name)
    aut = automorphism_group(G)
    for r in range(aut.order):
        rep = verify_reconstruction(G, G.elements(), r, aut=aut)
        assert rep.passed, rep.to_json()
        for c in rep.checks:
            assert all(c.conditions)
            assert {g: c.induced[g] for g in c.domain} == {g: aut.perms[r][g] for g in c.domain}


def test_reconstruction_with_small_parameter_set():
    G = catalog_group("D5")
    refl = [g for g in G.elements() if G.element_order(g) == 2][:2]
    aut = automorphism_group(G)
    outer = next(r for r in range(aut.order) if r not in set(aut.inner.map))
    rep = verify_reconstruction(G, refl, outer, aut=aut)
    assert rep.passed
    assert rep.union_matches


def test_reconstruction_from_permutation(s3):
    aut = automorphism_group(s3)
    rep = verify_reconstruction(s3, range(6), aut.perms[3], aut=aut)
    assert rep.passed and rep.rho == aut.perms[3]


def test_well_definedness_violation_is_flagged(s3):
    aut = automorphism_group(s3)
    fake = {1: Word.param(aut.inner.map[2])}
    rep = verify_reconstruction(s3, range(6), 0, aut=aut, witness_override={0: fake})
    assert not rep.checks[0].well_defined
    assert not rep.passed
    assert all(c.passed for c in rep.checks[1:])


def test_reconstruction_requires_special_pair(s3):
    with pytest.raises(NotSpecial):
        verify_reconstruction(catalog_group("D5"), [0], 0)


def test_report_json(s3):
    rep = verify_reconstruction(s3, range(6), 0)
    row = rep.checks[0].to_json()
    assert set(row) >= {"h", "conditions", "domain_size", "agrees_with_conjugation"}
    assert len(row["conditions"]) == 7

from towerlab.catalog import build_catalog, build_from_recipe, catalog_group
from towerlab.groups import center
from towerlab.io import format_cayley

import pytest
from towerlab.errors import CapExceeded


def test_small_catalog_contents():
    names = {e.name for e in build_catalog(6)}
    assert {"C2", "C3", "C4", "C5", "C6", "S3", "D3"} <= names


def test_full_catalog_families():
    names = {e.name for e in build_catalog(200)}
    assert {f"C{n}" for n in range(2, 13)} <= names
    assert {f"D{n}" for n in range(2, 13)} <= names
    assert {"S3", "S4", "S5", "A4", "A5", "Hol3", "Hol5", "Hol7", "S3wrC2"} <= names
    assert any("x" in n for n in names)


def test_centerless_tags():
    tags = {e.name: e.centerless for e in build_catalog(200)}
    assert tags["S3"] and not tags["C6"]
    for e in build_catalog(200):
        assert e.centerless == (center(e.group).order == 1)


def test_d3_is_s3_relabelled():
    from towerlab.autgroup import automorphism_group

    d3, s3 = catalog_group("D3"), catalog_group("S3")
    assert d3.order == s3.order == 6
    assert automorphism_group(d3).order == 6
    assert sorted(d3.element_orders) == sorted(s3.element_orders)


def test_builds_are_byte_identical():
    a = [format_cayley(e.group) for e in build_catalog(200)]
    b = [format_cayley(e.group) for e in build_catalog(200)]
    assert a == b
    for e in build_catalog(72):
        assert e.rebuild().rows == e.group.rows
        assert build_from_recipe(e.recipe).rows == e.group.rows


def test_orders_and_sort():
    entries = build_catalog(200)
    keys = [(e.order, e.name) for e in entries]
    assert keys == sorted(keys)
    assert catalog_group("S3wrC2").order == 72
    assert catalog_group("S3xS3").order == 36


def test_max_order_cap():
    with pytest.raises(CapExceeded):
        build_catalog(201)
    assert all(e.order <= 30 for e in build_catalog(30))

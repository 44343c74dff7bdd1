"""Deterministic catalog of small groups used by the verification suites."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .groups import (
    Group,
    check_cap,
    close_permutations,
    direct_product,
    group_from_permutations,
    is_centerless,
)


def cyclic(n: int) -> Group:
    a = np.arange(n)
    table = (a[:, None] + a[None, :]) % n
    return Group(table, [(-i) % n for i in range(n)], f"C{n}")


def dihedral(n: int) -> Group:
    """Dihedral group of order 2n; index k + n*e stands for r^k s^e."""
    size = 2 * n
    table = np.empty((size, size), dtype=np.int32)
    for i in range(size):
        k1, e1 = i % n, i // n
        for j in range(size):
            k2, e2 = j % n, j // n
            k = (k1 - k2) % n if e1 else (k1 + k2) % n
            table[i, j] = k + n * ((e1 + e2) % 2)
    inverse = [(-i) % n if i < n else i for i in range(size)]
    return Group(table, inverse, f"D{n}")


def _sign(p) -> int:
    seen, sign = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def symmetric(n: int) -> Group:
    return group_from_permutations(itertools.permutations(range(n)), f"S{n}")[0]


def alternating(n: int) -> Group:
    perms = [p for p in itertools.permutations(range(n)) if _sign(p) == 1]
    return group_from_permutations(perms, f"A{n}")[0]


def holomorph(p: int) -> Group:
    """Hol(Z/p): the affine maps x -> a x + b on Z/p, a a unit."""
    perms = [
        tuple((a * x + b) % p for x in range(p))
        for a in range(1, p)
        if gcd(a, p) == 1
        for b in range(p)
    ]
    return group_from_permutations(perms, f"Hol{p}")[0]


def wreath_s3_c2() -> Group:
    """(S3 x S3) semidirect C2, the swap acting by exchanging the factors."""
    gens = [
        (1, 0, 2, 3, 4, 5),
        (1, 2, 0, 3, 4, 5),
        (0, 1, 2, 4, 3, 5),
        (0, 1, 2, 4, 5, 3),
        (3, 4, 5, 0, 1, 2),
    ]
    return group_from_permutations(close_permutations(gens, 6), "S3wrC2")[0]


_FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "holomorph": holomorph,
    "wreath_s3_c2": lambda: wreath_s3_c2(),
}

# (family, params) for every base entry; order of appearance is irrelevant
# since the catalog is sorted by (order, name).
_BASE_RECIPES = (
    [("cyclic", (n,)) for n in range(2, 13)]
    + [("dihedral", (n,)) for n in range(2, 13)]
    + [("symmetric", (n,)) for n in range(3, 6)]
    + [("alternating", (n,)) for n in range(4, 6)]
    + [("holomorph", (p,)) for p in (3, 5, 7)]
    + [("wreath_s3_c2", ())]
)

_PRODUCTS = (
    ("cyclic", (2,), "cyclic", (2,)),
    ("symmetric", (3,), "cyclic", (2,)),
    ("symmetric", (3,), "cyclic", (3,)),
    ("dihedral", (5,), "cyclic", (2,)),
    ("alternating", (4,), "cyclic", (2,)),
    ("symmetric", (4,), "cyclic", (2,)),
    ("symmetric", (3,), "symmetric", (3,)),
    ("symmetric", (3,), "dihedral", (5,)),
    ("symmetric", (3,), "alternating", (4,)),
)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    recipe: tuple
    group: Group = field(repr=False, compare=False)
    centerless: bool

    @property
    def order(self) -> int:
        return self.group.order

    def rebuild(self) -> Group:
        return build_from_recipe(self.recipe)


def build_from_recipe(recipe: tuple) -> Group:
    family = recipe[0]
    if family == "product":
        _, left, right = recipe
        return direct_product(build_from_recipe(left), build_from_recipe(right))
    return _FAMILIES[family](*recipe[1])


def _expected_order(recipe: tuple) -> int:
    family = recipe[0]
    if family == "product":
        return _expected_order(recipe[1]) * _expected_order(recipe[2])
    params = recipe[1]
    if family == "cyclic":
        return params[0]
    if family == "dihedral":
        return 2 * params[0]
    if family in ("symmetric", "alternating"):
        f = 1
        for k in range(2, params[0] + 1):
            f *= k
        return f if family == "symmetric" else f // 2
    if family == "holomorph":
        p = params[0]
        return p * sum(1 for a in range(1, p) if gcd(a, p) == 1)
    if family == "wreath_s3_c2":
        return 72
    raise KeyError(family)


def build_catalog(max_order: int = 200) -> list[CatalogEntry]:
    check_cap("build_catalog max_order", max_order)
    recipes = [(fam, params) for fam, params in _BASE_RECIPES]
    recipes += [("product", (f1, p1), (f2, p2)) for f1, p1, f2, p2 in _PRODUCTS]
    entries = []
    for recipe in recipes:
        if _expected_order(recipe) > max_order:
            continue
        G = build_from_recipe(recipe)
        entries.append(CatalogEntry(G.name, recipe, G, is_centerless(G)))
    entries.sort(key=lambda e: (e.order, e.name))
    return entries


def catalog_group(name: str) -> Group:
    """Look a catalog group up by name, e.g. ``"S4"`` or ``"S3xC2"``."""
    for entry in build_catalog():
        if entry.name == name:
            return entry.group
    raise KeyError(name)

"""Exact automorphism groups of small finite groups.

The search picks a short generating set, then backtracks over images of the
generators.  Each partial assignment is pushed through a breadth-first walk
of the Cayley graph of the subgroup generated so far; any conflicting or
non-injective extension prunes the branch.  Complete maps are verified
against the full table before they are accepted.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .groups import (
    Group,
    Morphism,
    centralizer,
    certify_morphism,
    check_cap,
    group_from_permutations,
    subgroup_generated,
)

Perm = tuple[int, ...]


@dataclass(frozen=True)
class AutGroup:
    """Aut(G) as an abstract group plus its action on the base group.

    ``perms[k]`` is the automorphism with index ``k`` in ``group``; products in
    ``group`` are composition of maps.  ``inner.map[g]`` is the index of the
    conjugation h -> g h g^-1.
    """

    base: Group
    group: Group
    perms: tuple[Perm, ...]
    inner: Morphism

    @property
    def order(self) -> int:
        return self.group.order

    def index_of(self, perm: Sequence[int]) -> int:
        return self._index[tuple(perm)]

    @cached_property
    def _index(self) -> dict[Perm, int]:
        return {p: i for i, p in enumerate(self.perms)}


def greedy_generators(G: Group) -> list[int]:
    """Small generating set: repeatedly add the element that grows <S> most.

    Ties prefer elements whose order class is smallest (fewer candidate
    images during the search), then the lowest index.
    """
    orders = G.element_orders
    class_size: dict[int, int] = {}
    for o in orders:
        class_size[o] = class_size.get(o, 0) + 1
    gens: list[int] = []
    current = subgroup_generated(G, [])
    while current.order < G.order:
        best, best_key = None, None
        for g in G.elements():
            if g in current:
                continue
            size = subgroup_generated(G, gens + [g]).order
            key = (-size, class_size[orders[g]], g)
            if best_key is None or key < best_key:
                best, best_key = g, key
        gens.append(best)
        current = subgroup_generated(G, gens)
    return gens


def _extend(G: Group, gens: Sequence[int], images: Sequence[int]) -> list[int] | None:
    """Extend generator images to <gens> along the Cayley graph.

    Returns the partial map (``-1`` off the subgroup) or None when the
    extension is inconsistent or not injective.
    """
    rows = G.rows
    n = len(rows)
    phi = [-1] * n
    phi[0] = 0
    used = {0}
    queue = deque([0])
    pairs = list(zip(gens, images))
    while queue:
        u = queue.popleft()
        ru, rmu = rows[u], rows[phi[u]]
        for g, im in pairs:
            v, w = ru[g], rmu[im]
            cur = phi[v]
            if cur == -1:
                if w in used:
                    return None
                phi[v] = w
                used.add(w)
                queue.append(v)
            elif cur != w:
                return None
    return phi


def _invariants(G: Group) -> list[tuple[int, int]]:
    t = G.table
    csize = (t == t.T).sum(axis=1)  # |C(g)|
    return [(G.element_orders[g], int(csize[g])) for g in G.elements()]


def search_automorphisms(G: Group) -> list[Perm]:
    """All automorphisms of G as permutations, in lexicographic order."""
    if G.order == 1:
        return [(0,)]
    gens = greedy_generators(G)
    inv = _invariants(G)
    candidates = [[h for h in G.elements() if inv[h] == inv[g]] for g in gens]
    table = G.table
    found: list[Perm] = []

    def backtrack(k: int, images: list[int]) -> None:
        if k == len(gens):
            phi = _extend(G, gens, images)
            if phi is None:
                return
            m = np.asarray(phi)
            if np.array_equal(m[table], table[m[:, None], m[None, :]]):
                found.append(tuple(phi))
            return
        for h in candidates[k]:
            if h in images:
                continue
            images.append(h)
            if k == 0 or _extend(G, gens[: k + 1], images) is not None:
                backtrack(k + 1, images)
            images.pop()

    backtrack(0, [])
    found.sort()
    return found


def brute_force_automorphisms(G: Group) -> list[Perm]:
    """Reference enumeration over all bijections fixing 0 (tiny groups only)."""
    rows = G.rows
    n = G.order
    out = []
    for rest in itertools.permutations(range(1, n)):
        p = (0,) + rest
        if all(p[rows[i][j]] == rows[p[i]][p[j]] for i in range(n) for j in range(n)):
            out.append(p)
    return out


def pointwise_automorphisms(G: Group) -> list[Perm]:
    """Reference search assigning images element by element.

    Unlike :func:`search_automorphisms` it uses no generating set: it walks
    every bijection fixing 0 in lexicographic order and prunes as soon as a
    product of two assigned elements contradicts the table.  Exhaustive, so
    it serves as the oracle for groups whose n! is too large to list.
    """
    rows = G.rows
    n = G.order
    phi = [-1] * n
    phi[0] = 0
    used = [False] * n
    used[0] = True
    out: list[Perm] = []

    preimage: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            preimage[rows[a][b]].append((a, b))

    def consistent(k: int) -> bool:
        # every triple a*b=c gets checked once its largest index is assigned
        for i in range(k + 1):
            for a, b in ((i, k), (k, i)):
                c = rows[a][b]
                if c <= k and phi[c] != rows[phi[a]][phi[b]]:
                    return False
        for a, b in preimage[k]:
            if a < k and b < k and phi[k] != rows[phi[a]][phi[b]]:
                return False
        return True

    def rec(k: int) -> None:
        if k == n:
            out.append(tuple(phi))
            return
        for v in range(1, n):
            if used[v]:
                continue
            phi[k] = v
            used[v] = True
            if consistent(k):
                rec(k + 1)
            used[v] = False
            phi[k] = -1

    rec(1)
    return out


def inner_permutation(G: Group, g: int) -> Perm:
    rows, inv = G.rows, G.inverse
    gi = inv[g]
    return tuple(rows[rows[g][h]][gi] for h in G.elements())


def automorphism_group(G: Group, cap: int | None = None, name: str | None = None) -> AutGroup:
    check_cap(f"automorphism_group({G.name})", G.order, cap)
    perms = search_automorphisms(G)
    group, plist = group_from_permutations(perms, name or f"Aut({G.name})")
    index = {p: i for i, p in enumerate(plist)}
    inner_map = [index[inner_permutation(G, g)] for g in G.elements()]
    inner = certify_morphism(G, group, inner_map)
    return AutGroup(G, group, tuple(plist), inner)


def is_complete(G: Group, cap: int | None = None) -> bool:
    if centralizer(G, G.elements()).order != 1:
        return False
    return automorphism_group(G, cap).order == G.order


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """p o q"""
    return tuple(p[i] for i in q)


def perm_inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def is_automorphism(G: Group, perm: Sequence[int]) -> bool:
    m = np.asarray(perm, dtype=np.int64)
    if sorted(m.tolist()) != list(range(G.order)):
        return False
    t = G.table
    return bool(np.array_equal(m[t], t[m[:, None], m[None, :]]))

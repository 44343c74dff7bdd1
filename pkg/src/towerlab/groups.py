"""Finite groups as Cayley tables with the identity pinned at index 0.

Everything downstream (automorphism search, towers, types) works on plain
integer indices into a :class:`Group`.  Tables are held twice: as a read-only
numpy array for vectorised checks, and as a tuple of row tuples because
scalar lookups on tuples are much cheaper in tight Python loops.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    EntryOutOfRange,
    IdentityNotAtZero,
    IndexOutOfRange,
    InvalidSubgroup,
    MissingInverse,
    NotAssociative,
    NotSquare,
)

DEFAULT_CAP = 200


def desk_cap() -> int:
    """Order cap for exact computations; ``TOWERLAB_CAP`` overrides it."""
    raw = os.environ.get("TOWERLAB_CAP")
    if raw:
        return int(raw)
    return DEFAULT_CAP


def check_cap(what: str, size: int, cap: int | None = None) -> None:
    cap = desk_cap() if cap is None else cap
    if size > cap:
        raise CapExceeded(what, size, cap)


class Group:
    """A validated finite group.  Build one with :func:`validate_group`."""

    def __init__(self, table: np.ndarray, inverse: Sequence[int], name: str):
        table = np.array(table, dtype=np.int32)
        table.setflags(write=False)
        self.table = table
        self.rows = tuple(tuple(int(v) for v in row) for row in table)
        self.inverse = tuple(int(v) for v in inverse)
        self.name = name

    @property
    def order(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def elements(self) -> range:
        return range(len(self.rows))

    def _ok(self, *items: int) -> None:
        n = len(self.rows)
        for a in items:
            if not 0 <= a < n:
                raise IndexOutOfRange(f"element {a} outside 0..{n - 1} of {self.name}")

    def mul(self, a: int, b: int) -> int:
        self._ok(a, b)
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        self._ok(a)
        return self.inverse[a]

    def conj(self, g: int, h: int) -> int:
        """Return g h g^-1."""
        self._ok(g, h)
        return self.rows[self.rows[g][h]][self.inverse[g]]

    def power(self, g: int, e: int) -> int:
        if e < 0:
            g, e = self.inverse[g], -e
        out = 0
        rows = self.rows
        for _ in range(e):
            out = rows[out][g]
        return out

    def product(self, items: Iterable[int]) -> int:
        out = 0
        rows = self.rows
        for g in items:
            out = rows[out][g]
        return out

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        rows = self.rows
        orders = []
        for g in range(len(rows)):
            k, cur = 1, g
            while cur != 0:
                cur = rows[cur][g]
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, g: int) -> int:
        return self.element_orders[g]

    def check_index(self, items: Iterable[int]) -> list[int]:
        n = len(self.rows)
        out = []
        for s in items:
            s = int(s)
            if not 0 <= s < n:
                raise IndexOutOfRange(f"{s} is not an element index of {self.name} (order {n})")
            out.append(s)
        return out


@dataclass(frozen=True)
class Subgroup:
    parent: Group
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"Subgroup(of={self.parent.name!r}, order={self.order})"

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    def as_group(self, name: str | None = None) -> tuple[Group, dict[int, int]]:
        """Re-index the subgroup as a standalone group.

        Returns the group and the map parent index -> local index.  Since the
        element list is sorted and contains 0, the identity stays at 0.
        """
        local = {g: i for i, g in enumerate(self.elements)}
        rows = self.parent.rows
        table = [[local[rows[a][b]] for b in self.elements] for a in self.elements]
        inverse = [local[self.parent.inverse[a]] for a in self.elements]
        return Group(np.array(table), inverse, name or f"sub({self.parent.name})"), local


@dataclass(frozen=True)
class Morphism:
    source: Group
    target: Group
    map: tuple[int, ...]
    certified: frozenset[str]

    @property
    def is_homomorphism(self) -> bool:
        return "homomorphism" in self.certified

    @property
    def is_injective(self) -> bool:
        return "injective" in self.certified

    @property
    def is_surjective(self) -> bool:
        return "surjective" in self.certified

    def image(self) -> Subgroup:
        if not self.is_homomorphism:
            raise InvalidSubgroup("image of a non-homomorphism is not a subgroup")
        return Subgroup(self.target, tuple(sorted(set(self.map))))

    def __call__(self, g: int) -> int:
        return self.map[g]


def certify_morphism(source: Group, target: Group, mapping: Sequence[int]) -> Morphism:
    """Check a map for the homomorphism property, injectivity and surjectivity."""
    m = np.asarray(mapping, dtype=np.int64)
    if m.shape != (source.order,):
        raise ValueError("map length must equal the source order")
    if source.order and (m.min() < 0 or m.max() >= target.order):
        raise IndexOutOfRange("map has entries outside the target")
    flags = set()
    if np.array_equal(m[source.table], target.table[m[:, None], m[None, :]]):
        flags.add("homomorphism")
    distinct = len(set(m.tolist()))
    if distinct == source.order:
        flags.add("injective")
    if distinct == target.order:
        flags.add("surjective")
    return Morphism(source, target, tuple(int(v) for v in m), frozenset(flags))


def validate_group(table, name: str = "G") -> Group:
    try:
        t = np.asarray(table)
    except ValueError:
        raise NotSquare("table rows have different lengths") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotSquare(f"table shape {t.shape} is not n x n with n >= 1")
    n = t.shape[0]
    if not np.issubdtype(t.dtype, np.integer):
        raise EntryOutOfRange("table entries must be integers")
    if t.min() < 0 or t.max() >= n:
        raise EntryOutOfRange(f"table entries must lie in [0, {n})")
    t = t.astype(np.int32)
    ar = np.arange(n)
    if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
        raise IdentityNotAtZero("element 0 is not a two-sided identity")
    left = t[t]  # left[i, j, k] = (i*j)*k
    right = t[ar[:, None, None], t[None, :, :]]  # right[i, j, k] = i*(j*k)
    bad = np.argwhere(left != right)
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        raise NotAssociative(i, j, k)
    inverse = []
    for i in range(n):
        cand = np.flatnonzero((t[i] == 0) & (t[:, i] == 0))
        if len(cand) != 1:
            raise MissingInverse(i)
        inverse.append(int(cand[0]))
    return Group(t, inverse, name)


def group_from_permutations(perms: Iterable[Sequence[int]], name: str) -> tuple[Group, list[tuple[int, ...]]]:
    """Table a set of permutations that is closed under composition.

    Permutations are sorted lexicographically, which places the identity at
    index 0.  The product is composition of maps: ``(p*q)(i) = p(q(i))``.
    """
    plist = sorted({tuple(int(v) for v in p) for p in perms})
    if not plist:
        raise InvalidSubgroup("empty permutation set")
    degree = len(plist[0])
    if plist[0] != tuple(range(degree)):
        raise InvalidSubgroup("identity permutation missing")
    P = np.array(plist, dtype=np.int32)
    index = {row.tobytes(): i for i, row in enumerate(P)}
    m = len(plist)
    table = np.empty((m, m), dtype=np.int32)
    for i in range(m):
        comp = P[i][P]  # comp[j] = P[i] o P[j]
        for j in range(m):
            key = comp[j].tobytes()
            if key not in index:
                raise InvalidSubgroup("permutation set is not closed under composition")
            table[i, j] = index[key]
    inverse = [int(np.flatnonzero(table[i] == 0)[0]) for i in range(m)]
    return Group(table, inverse, name), plist


def close_permutations(gens: Iterable[Sequence[int]], degree: int) -> list[tuple[int, ...]]:
    """All products of the given permutations (the generated group)."""
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(p[i] for i in g)  # p o g
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return sorted(seen)


def close_permutations_group(gens: Iterable[Sequence[int]], name: str) -> tuple[Group, list[tuple[int, ...]]]:
    gens = [tuple(g) for g in gens]
    return group_from_permutations(close_permutations(gens, len(gens[0])), name)


def _closure(G: Group, seeds: Iterable[int]) -> tuple[int, ...]:
    gens = sorted(set(seeds) - {0})
    rows = G.rows
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        row = rows[u]
        for g in gens:
            v = row[g]
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return tuple(sorted(seen))


def subgroup_generated(G: Group, S: Iterable[int]) -> Subgroup:
    return Subgroup(G, _closure(G, G.check_index(S)))


def make_subgroup(G: Group, elements: Iterable[int]) -> Subgroup:
    """Wrap an explicit element set, raising InvalidSubgroup unless it is one."""
    elems = sorted(set(G.check_index(elements)))
    if not elems or elems[0] != 0:
        raise InvalidSubgroup("subgroup must contain the identity 0")
    es = set(elems)
    rows = G.rows
    for a in elems:
        if G.inverse[a] not in es:
            raise InvalidSubgroup(f"not closed under inverse at {a}")
        row = rows[a]
        for b in elems:
            if row[b] not in es:
                raise InvalidSubgroup(f"not closed: {a}*{b}")
    return Subgroup(G, tuple(elems))


def _check_subgroup(G: Group, H: Subgroup) -> None:
    if H.parent is not G and H.parent != G:
        raise InvalidSubgroup("subgroup belongs to a different group")
    make_subgroup(G, H.elements)


def centralizer(G: Group, S: Iterable[int]) -> Subgroup:
    s = np.array(G.check_index(S), dtype=np.int64)
    t = G.table
    if len(s) == 0:
        return Subgroup(G, tuple(G.elements()))
    ok = np.all(t[:, s] == t[s, :].T, axis=1)
    return Subgroup(G, tuple(int(v) for v in np.flatnonzero(ok)))


def center(G: Group) -> Subgroup:
    return centralizer(G, G.elements())


def is_centerless(G: Group) -> bool:
    return center(G).order == 1


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    _check_subgroup(G, H)
    t = G.table
    h = np.array(H.elements, dtype=np.int64)
    inv = np.array(G.inverse, dtype=np.int64)
    mask = H.mask()
    conj = t[t[:, h], inv[:, None]]  # conj[g, k] = g h_k g^-1
    ok = np.all(mask[conj], axis=1)
    return Subgroup(G, tuple(int(v) for v in np.flatnonzero(ok)))


def is_normal(G: Group, H: Subgroup) -> bool:
    return normalizer(G, H).order == G.order


def direct_product(G: Group, H: Group, name: str | None = None) -> Group:
    n, m = G.order, H.order
    a = np.arange(n * m)
    g, h = a // m, a % m
    table = G.table[g[:, None], g[None, :]] * m + H.table[h[:, None], h[None, :]]
    inverse = [G.inverse[i // m] * m + H.inverse[i % m] for i in range(n * m)]
    return Group(table, inverse, name or f"{G.name}x{H.name}")


def derived_subgroup(G: Group) -> Subgroup:
    rows, inv = G.rows, G.inverse
    comms = {rows[rows[a][b]][rows[inv[a]][inv[b]]] for a in G.elements() for b in G.elements()}
    return subgroup_generated(G, comms)


def index2_subgroups(G: Group) -> list[Subgroup]:
    """All subgroups of index 2, as kernels of the surjections G -> Z/2.

    Such kernels contain N = <G', g^2>, and G/N is elementary abelian of some
    rank r; the index-2 subgroups are the kernels of the 2^r - 1 nonzero
    functionals on G/N.
    """
    n = G.order
    if n % 2:
        return []
    squares = {G.mul(g, g) for g in G.elements()}
    N = subgroup_generated(G, set(derived_subgroup(G).elements) | squares)
    basis: list[int] = []
    span = N
    while span.order < n:
        b = next(g for g in G.elements() if g not in span)
        basis.append(b)
        span = subgroup_generated(G, set(span.elements) | {b})
    # coordinates: coset of N hit by each product of basis elements
    coords = [0] * n
    for mask in range(1 << len(basis)):
        rep = G.product(basis[i] for i in range(len(basis)) if mask >> i & 1)
        for x in N.elements:
            coords[G.mul(rep, x)] = mask
    out = []
    for functional in range(1, 1 << len(basis)):
        kernel = tuple(g for g in G.elements() if bin(coords[g] & functional).count("1") % 2 == 0)
        out.append(Subgroup(G, kernel))
    out.sort(key=lambda s: s.elements)
    return out

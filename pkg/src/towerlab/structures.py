"""Finite relational structures, their automorphism groups and orbit
structures (one relation per Aut-orbit of tuples).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, NotAnAutomorphism
from .autgroup import greedy_generators
from .groups import Group, group_from_permutations, subgroup_generated
from .towers import NormChain, normalizer_tower

DEFAULT_UNIVERSE_CAP = 8
DEFAULT_TUPLE_BUDGET = 200_000


@dataclass(frozen=True)
class Relation:
    name: str
    arity: int
    tuples: frozenset[tuple[int, ...]]


@dataclass(frozen=True)
class Structure:
    size: int
    relations: tuple[Relation, ...] = ()
    name: str = "S"

    def __post_init__(self):
        for rel in self.relations:
            for t in rel.tuples:
                if len(t) != rel.arity:
                    raise ValueError(f"tuple {t} in {rel.name} has wrong arity")
                if any(not 0 <= v < self.size for v in t):
                    raise ValueError(f"tuple {t} in {rel.name} leaves the universe")

    @classmethod
    def build(cls, size: int, relations: dict[str, Iterable[Sequence[int]]], name: str = "S") -> "Structure":
        rels = []
        for rname, tuples in relations.items():
            ts = frozenset(tuple(int(v) for v in t) for t in tuples)
            arity = len(next(iter(ts))) if ts else 0
            rels.append(Relation(rname, arity, ts))
        return cls(size, tuple(rels), name)

    def preserved_by(self, perm: Sequence[int]) -> bool:
        for rel in self.relations:
            for t in rel.tuples:
                if tuple(perm[v] for v in t) not in rel.tuples:
                    return False
        return True


@dataclass(frozen=True)
class StructureAut:
    structure: Structure = field(repr=False)
    group: Group
    perms: tuple[tuple[int, ...], ...]


def _colorings(S: Structure) -> dict[int, np.ndarray]:
    """Per arity: a color for every tuple code, equal iff same relation set."""
    m = S.size
    sigs: dict[int, dict[int, set[int]]] = {}
    for ri, rel in enumerate(S.relations):
        bucket = sigs.setdefault(rel.arity, {})
        for t in rel.tuples:
            code = 0
            for v in t:
                code = code * m + v
            bucket.setdefault(code, set()).add(ri)
    out = {}
    for k, bucket in sigs.items():
        colors = np.zeros(m**k, dtype=np.int64)
        ids: dict[frozenset[int], int] = {}
        for code, rs in bucket.items():
            colors[code] = ids.setdefault(frozenset(rs), len(ids) + 1)
        out[k] = colors
    return out


def structure_automorphisms(S: Structure, cap: int | None = None) -> list[tuple[int, ...]]:
    """All permutations of the universe preserving every relation, sorted.

    Points are assigned in order 0, 1, ...; after assigning point d every
    relation tuple whose largest entry is d is mapped and compared (by
    relation-membership color) in one vectorised step.
    """
    m = S.size
    cap = DEFAULT_UNIVERSE_CAP if cap is None else cap
    if m > cap:
        raise CapExceeded("structure universe", m, cap)
    if m == 0:
        return [()]
    colors = _colorings(S)
    checks: list[list[tuple[np.ndarray, np.ndarray, np.ndarray]]] = [[] for _ in range(m)]
    for k, col in colors.items():
        if k == 0:
            continue
        codes = np.flatnonzero(col)
        tuples = np.stack(np.unravel_index(codes, (m,) * k), axis=1) if len(codes) else np.zeros((0, k), int)
        top = tuples.max(axis=1) if len(tuples) else np.zeros(0, int)
        weights = m ** np.arange(k - 1, -1, -1)
        for d in range(m):
            sel = top == d
            if sel.any():
                checks[d].append((tuples[sel], col[codes[sel]], weights))
    # unary colors give a cheap candidate filter
    unary = colors.get(1)
    perm = np.full(m, -1, dtype=np.int64)
    used = [False] * m
    out: list[tuple[int, ...]] = []

    def ok(d: int) -> bool:
        for tuples, want, weights in checks[d]:
            img = perm[tuples] @ weights
            if not np.array_equal(colors[tuples.shape[1]][img], want):
                return False
        return True

    def rec(d: int) -> None:
        if d == m:
            out.append(tuple(int(v) for v in perm))
            return
        for v in range(m):
            if used[v] or (unary is not None and unary[v] != unary[d]):
                continue
            perm[d] = v
            used[v] = True
            if ok(d):
                rec(d + 1)
            used[v] = False
        perm[d] = -1

    rec(0)
    return sorted(out)


def brute_force_structure_automorphisms(S: Structure) -> list[tuple[int, ...]]:
    return [p for p in itertools.permutations(range(S.size)) if S.preserved_by(p)]


def structure_aut_group(S: Structure, cap: int | None = None) -> StructureAut:
    perms = structure_automorphisms(S, cap)
    group, plist = group_from_permutations(perms, f"Aut({S.name})")
    return StructureAut(S, group, tuple(plist))


def orbit_structure(
    S: Structure,
    max_arity: int | None = None,
    budget: int = DEFAULT_TUPLE_BUDGET,
    cap: int | None = None,
) -> Structure:
    """Relations R_t = Aut(S)-orbit of t, for every tuple t of length <= max_arity.

    Orbit-mates produce the same relation, so one relation is emitted per
    orbit, named after its lexicographically least member.
    """
    m = S.size
    r = m if max_arity is None else max_arity
    if r < 0 or r > m:
        raise ValueError("max_arity must lie in [0, universe size]")
    total = sum(m**k for k in range(1, r + 1))
    if total > budget:
        raise CapExceeded("orbit_structure tuple count", total, budget)
    aut = structure_aut_group(S, cap)
    gens = np.array([aut.perms[g] for g in greedy_generators(aut.group)], dtype=np.int64).reshape(-1, m)
    rels = []
    for k in range(1, r + 1):
        shape = (m,) * k
        tuples = np.stack(np.unravel_index(np.arange(m**k), shape), axis=1)
        weights = m ** np.arange(k - 1, -1, -1)
        moves = [g[tuples] @ weights for g in gens]
        # propagate the least code along generator edges until stable
        label = np.arange(m**k)
        while True:
            new = label.copy()
            for mv in moves:
                np.minimum.at(new, mv, label)
                np.minimum(new, new[mv], out=new)
            if np.array_equal(new, label):
                break
            label = new
        order = np.argsort(label, kind="stable")
        reps, starts = np.unique(label[order], return_index=True)
        for rep, chunk in zip(reps, np.split(order, starts[1:])):
            ts = frozenset(tuple(int(v) for v in tuples[c]) for c in chunk)
            rep_t = tuple(int(v) for v in tuples[rep])
            rels.append(Relation("R_" + "_".join(map(str, rep_t)), k, ts))
    return Structure(m, tuple(rels), f"orb({S.name},{r})")


@dataclass(frozen=True)
class NlgReport:
    structure: str
    aut_order: int
    subgroup_order: int
    tau: int
    chain_orders: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "structure": self.structure,
            "aut_order": self.aut_order,
            "subgroup_order": self.subgroup_order,
            "tau": self.tau,
            "chain_orders": list(self.chain_orders),
        }


def nlg_harness(S: Structure, generators: Iterable, aut: StructureAut | None = None) -> tuple[NlgReport, NormChain]:
    """Normalizer tower of H = <generators> inside Aut(S).

    Generators are indices into the (lexicographically sorted) automorphism
    list, or explicit permutations of the universe.
    """
    aut = aut or structure_aut_group(S)
    index = {p: i for i, p in enumerate(aut.perms)}
    idx = []
    for g in generators:
        if isinstance(g, (int, np.integer)):
            if not 0 <= int(g) < aut.group.order:
                raise NotAnAutomorphism(f"no automorphism with index {g}")
            idx.append(int(g))
        else:
            p = tuple(int(v) for v in g)
            if p not in index:
                raise NotAnAutomorphism(f"{p} does not preserve {S.name}")
            idx.append(index[p])
    H = subgroup_generated(aut.group, idx)
    chain = normalizer_tower(aut.group, H)
    report = NlgReport(S.name, aut.group.order, H.order, chain.tau, tuple(chain.orders()[: chain.tau + 1]))
    return report, chain

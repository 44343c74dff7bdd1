"""Quantifier-free types over a parameter set, the relation E_{G,A}, and the
special / weakly special pair checks built on it.

Two elements x, y are E-equivalent over A when every word with parameters
from A that kills x also kills y and vice versa.  For finite groups this is
decided exactly through the subgroup D of G x G generated by the diagonal
copy of A together with (x, y): x E y iff both coordinate projections of D
are injective, i.e. D is the graph of an isomorphism <A, x> -> <A, y> that
fixes A and sends x to y.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .autgroup import greedy_generators, inner_permutation, is_automorphism
from .errors import (
    BaseNotSpecial,
    CentralizerNontrivial,
    HypothesesFail,
    ParamOutsideA,
)
from .groups import (
    Group,
    Subgroup,
    center,
    centralizer,
    close_permutations_group,
    direct_product,
    index2_subgroups,
    is_normal,
    make_subgroup,
    subgroup_generated,
)
from .towers import AutTower, automorphism_tower
from .words import Word, enumerate_reduced_words, evaluate_word


def _params(G: Group, A: Iterable[int]) -> list[int]:
    try:
        return sorted(set(G.check_index(A)))
    except IndexError as exc:
        raise ParamOutsideA(str(exc)) from None


# ---------------------------------------------------------------------------
# type fragments


@dataclass(frozen=True)
class TypeFragment:
    """Words of length <= bound, with parameters from <A>, true at an element.

    The empty word is left out: it holds everywhere and carries no
    information.
    """

    group: Group = field(repr=False)
    params: tuple[int, ...]
    bound: int
    element: int
    words: tuple[Word, ...]

    def as_set(self) -> frozenset[Word]:
        return frozenset(self.words)


def type_fragment(G: Group, A: Iterable[int], x_val: int, L: int) -> TypeFragment:
    if L < 1:
        raise ValueError("length bound must be >= 1")
    params = subgroup_generated(G, _params(G, A)).elements
    letters = [p for p in params if p != 0]
    words = [
        w
        for w in enumerate_reduced_words(letters, L)
        if evaluate_word(G, w, x_val) == 0
    ]
    words.sort(key=Word.sort_key)
    return TypeFragment(G, tuple(params), L, x_val, tuple(words))


def fragment_separation(G: Group, A: Iterable[int], x: int, y: int, max_len: int | None = None) -> tuple[int, bool]:
    """Compare the type fragments of x and y at growing length bounds.

    Enumerates words layer by layer, merging words by their pair of values
    (w(x), w(y)); a layer containing a pair with exactly one coordinate equal
    to e is a word in one fragment but not the other.  Returns ``(L, False)``
    for the first length at which the fragments differ, or ``(L, True)``
    where L is the length at which no new value pairs appear, after which
    the fragments can never differ.
    """
    params = subgroup_generated(G, _params(G, A)).elements
    rows, inv = G.rows, G.inverse
    steps = [(x, y), (inv[x], inv[y])] + [(c, c) for c in params if c != 0]
    max_len = 2 * G.order if max_len is None else max_len
    seen = {(0, 0)}
    layer = [(0, 0)]
    for L in range(1, max_len + 1):
        nxt = []
        for u, v in layer:
            ru, rv = rows[u], rows[v]
            for s, t in steps:
                pair = (ru[s], rv[t])
                if pair in seen:
                    continue
                if (pair[0] == 0) != (pair[1] == 0):
                    return L, False
                seen.add(pair)
                nxt.append(pair)
        if not nxt:
            return L, True
        layer = nxt
    return max_len, True


# ---------------------------------------------------------------------------
# the relation E


def are_equivalent(G: Group, A: Iterable[int], x: int, y: int) -> bool:
    params = _params(G, A)
    x, y = G.check_index([x, y])
    if x == y:
        return True
    rows = G.rows
    gens = [(a, a) for a in params if a != 0] + [(x, y)]
    seen = {(0, 0)}
    queue = deque([(0, 0)])
    while queue:
        u, v = queue.popleft()
        ru, rv = rows[u], rows[v]
        for s, t in gens:
            p, q = ru[s], rv[t]
            if (p, q) in seen:
                continue
            if p == 0 or q == 0:
                # (e, q) with q != e or (p, e) with p != e: a projection
                # has a kernel
                return False
            seen.add((p, q))
            queue.append((p, q))
    return True


def _signature(G: Group, K: frozenset[int], A: Sequence[int], x: int) -> tuple:
    """Equations over <A> that x satisfies in a cheap, fixed family.

    Records which powers of x land in <A> (and where) and where x conjugates
    each parameter when the result stays in <A>.  E-equivalent elements
    always share the signature, so it only ever prunes inequivalent pairs.
    """
    rows, inv = G.rows, G.inverse
    powers = []
    cur = x
    while True:
        powers.append(cur if cur in K else -1)
        if cur == 0:
            break
        cur = rows[cur][x]
    xi = inv[x]
    conj = tuple(
        c if (c := rows[rows[x][a]][xi]) in K else -1 for a in A
    )
    return (tuple(powers), conj)


def equivalence_classes(G: Group, A: Iterable[int], within: Iterable[int] | None = None) -> list[list[int]]:
    """E_{G,A}-classes of the elements in ``within`` (default all of G)."""
    params = _params(G, A)
    K = frozenset(subgroup_generated(G, params).elements)
    elems = list(G.elements()) if within is None else sorted(set(within))
    buckets: dict[tuple, list[list[int]]] = {}
    for x in elems:
        sig = _signature(G, K, params, x)
        classes = buckets.setdefault(sig, [])
        for cls in classes:
            if are_equivalent(G, params, cls[0], x):
                cls.append(x)
                break
        else:
            classes.append([x])
    out = [cls for classes in buckets.values() for cls in classes]
    out.sort()
    return out


def is_special_pair(G: Group, A: Iterable[int], within: Iterable[int] | None = None) -> bool:
    """True iff E_{G,A} is equality (on ``within``, when given).

    Passing ``within`` = the elements of a subgroup H containing A decides
    whether (H, A) is special, because <A, x> is the same subgroup whether it
    is generated inside H or inside G.
    """
    return all(len(c) == 1 for c in equivalence_classes(G, A, within))


# ---------------------------------------------------------------------------
# weakly special pairs


def _tower_data(G: Group, A: Sequence[int], tower: AutTower | None, cap: int):
    tower = tower or automorphism_tower(G, cap)
    top = tower.top
    g_img = [tower.lift(g, 0) for g in G.elements()]
    a_img = [g_img[a] for a in A]
    return tower, top, g_img, a_img


def weak_equivalence_classes(G: Group, A: Iterable[int], tower: AutTower | None = None, cap: int = 10) -> list[list[int]]:
    """Classes of E^k: x ~ y iff a top-level element fixing A conjugates x to y."""
    params = _params(G, A)
    tower, top, g_img, a_img = _tower_data(G, params, tower, cap)
    back = {v: g for g, v in enumerate(g_img)}
    C = centralizer(top, a_img)
    parent = list(G.elements())

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for t in C.elements:
        for g in G.elements():
            h = back.get(top.conj(t, g_img[g]))
            if h is None:
                continue
            ra, rb = find(g), find(h)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    classes: dict[int, list[int]] = {}
    for g in G.elements():
        classes.setdefault(find(g), []).append(g)
    return sorted(classes.values())


def is_weakly_special(G: Group, A: Iterable[int], tower: AutTower | None = None, cap: int = 10) -> bool:
    return all(len(c) == 1 for c in weak_equivalence_classes(G, A, tower, cap))


# ---------------------------------------------------------------------------
# the lemma and its tower consequences


@dataclass(frozen=True)
class MyLemmaReport:
    normal: bool
    centralizer_trivial: bool
    base_special: bool
    conclusion_holds: bool

    @property
    def hypotheses_hold(self) -> bool:
        return self.normal and self.centralizer_trivial and self.base_special

    @property
    def implication_holds(self) -> bool:
        return (not self.hypotheses_hold) or self.conclusion_holds

    def to_json(self) -> dict:
        return {
            "hypotheses_hold": self.hypotheses_hold,
            "normal": self.normal,
            "centralizer_trivial": self.centralizer_trivial,
            "base_special": self.base_special,
            "conclusion_holds": self.conclusion_holds,
            "implication_holds": self.implication_holds,
        }


def check_mylemma(G2: Group, G1: Subgroup, A: Iterable[int]) -> MyLemmaReport:
    """Normal G1 in G2 with trivial centralizer, (G1, A) special => (G2, A) special."""
    params = _params(G2, A)
    if not set(params) <= G1.element_set:
        raise ParamOutsideA("A must lie inside G1")
    G1 = make_subgroup(G2, G1.elements)
    normal = is_normal(G2, G1)
    cent = centralizer(G2, G1.elements).order == 1
    base = is_special_pair(G2, params, within=G1.elements)
    return MyLemmaReport(normal, cent, base, is_special_pair(G2, params))


def restriction_injectivity(tower: AutTower, A: Iterable[int]) -> bool:
    """Is every automorphism of every level determined by its values on A?"""
    params = _params(tower.base, A)
    for alpha, level in enumerate(tower.levels):
        a_img = [tower.lift(a, 0, alpha) for a in params]
        if centralizer(level, a_img).order != 1:
            raise CentralizerNontrivial(alpha)
        restricted = {tuple(p[a] for a in a_img) for p in tower.auts[alpha].perms}
        if len(restricted) != len(tower.auts[alpha].perms):
            return False
    return True


@dataclass(frozen=True)
class SpecialIndReport:
    levels: tuple[tuple[int, bool, bool], ...]  # (order, special, centralizer trivial)

    @property
    def passed(self) -> bool:
        return all(s and c for _, s, c in self.levels)


def check_special_ind(tower: AutTower, A: Iterable[int]) -> SpecialIndReport:
    params = _params(tower.base, A)
    if not is_special_pair(tower.base, params):
        raise BaseNotSpecial(f"({tower.base.name}, A) is not special")
    rows = []
    for alpha, level in enumerate(tower.levels):
        a_img = [tower.lift(a, 0, alpha) for a in params]
        rows.append((level.order, is_special_pair(level, a_img), centralizer(level, a_img).order == 1))
    return SpecialIndReport(tuple(rows))


# ---------------------------------------------------------------------------
# the central-twist construction


@dataclass(frozen=True)
class Example4Witness:
    base_name: str
    order: int
    H1: tuple[int, ...]
    H2: tuple[int, ...]
    x1: tuple[int, ...]
    x2: tuple[int, ...]
    automorphisms: bool
    distinct: bool
    outer: bool
    involutions: bool
    commute_with_inner: bool
    equivalent_over_inner: bool

    @property
    def verified(self) -> bool:
        return (
            self.automorphisms
            and self.distinct
            and self.outer
            and self.involutions
            and self.commute_with_inner
            and self.equivalent_over_inner
        )

    def to_json(self) -> dict:
        return {
            "group": self.base_name,
            "product_order": self.order,
            "H1": list(self.H1),
            "H2": list(self.H2),
            "x1": list(self.x1),
            "x2": list(self.x2),
            "checks": {
                "automorphisms": self.automorphisms,
                "distinct": self.distinct,
                "outer": self.outer,
                "involutions": self.involutions,
                "commute_with_inner": self.commute_with_inner,
                "equivalent_over_inner": self.equivalent_over_inner,
            },
            "verified": self.verified,
        }


def _example4_hypotheses(G: Group, H1: Subgroup, H2: Subgroup) -> None:
    if center(G).order != 1:
        raise HypothesesFail("centerless", f"{G.name} has a center")
    if H1.elements == H2.elements:
        raise HypothesesFail("distinctness", "H1 = H2")
    for H in (H1, H2):
        H = make_subgroup(G, H.elements)
        if 2 * H.order != G.order:
            raise HypothesesFail("index2", f"subgroup of order {H.order} in {G.order}")
        if len(set(centralizer(G, H.elements).elements) & H.element_set) != 1:
            raise HypothesesFail("center", "an index-2 subgroup has a nontrivial center")


def build_example4(G: Group, H1: Subgroup, H2: Subgroup) -> Example4Witness:
    """Twist G x Z/2 by its central involution off each H_i x Z/2.

    The two twists x1, x2 are outer automorphisms that act trivially on the
    inner automorphism group, so they cannot be told apart by any equation
    over Inn(G x Z/2); that is checked with :func:`are_equivalent` inside
    the subgroup of Aut(G x Z/2) generated by Inn and the two twists.
    """
    _example4_hypotheses(G, H1, H2)
    C2 = Group([[0, 1], [1, 0]], [0, 1], "C2")
    Gp = direct_product(G, C2)
    a = 1  # (e, 1) under the (g, z) -> 2g + z indexing

    def twist(H: Subgroup) -> tuple[int, ...]:
        lifted = {2 * h + z for h in H.elements for z in (0, 1)}
        return tuple(g if g in lifted else Gp.mul(a, g) for g in Gp.elements())

    x1, x2 = twist(H1), twist(H2)
    inner = {inner_permutation(Gp, g) for g in Gp.elements()}
    autos = is_automorphism(Gp, x1) and is_automorphism(Gp, x2)
    involutions = all(x[x[g]] == g for x in (x1, x2) for g in Gp.elements())
    commute = all(
        tuple(x[p[g]] for g in Gp.elements()) == tuple(p[x[g]] for g in Gp.elements())
        for x in (x1, x2)
        for p in inner
    )
    inner_gens = [inner_permutation(Gp, g) for g in greedy_generators(Gp)]
    K, perms = close_permutations_group(inner_gens + [x1, x2], f"<Inn,x1,x2>({Gp.name})")
    index = {p: i for i, p in enumerate(perms)}
    inner_idx = [index[p] for p in inner]
    equiv = are_equivalent(K, inner_idx, index[x1], index[x2])
    return Example4Witness(
        G.name,
        Gp.order,
        tuple(H1.elements),
        tuple(H2.elements),
        x1,
        x2,
        autos,
        x1 != x2,
        x1 not in inner and x2 not in inner,
        involutions,
        commute,
        equiv,
    )


def example4_candidates(G: Group) -> list[tuple[Subgroup, Subgroup]]:
    """Pairs of distinct index-2 subgroups with trivial center.

    Raises HypothesesFail('need two') when G has fewer than two index-2
    subgroups at all, and HypothesesFail('centerless') when G has a center.
    """
    if center(G).order != 1:
        raise HypothesesFail("centerless", f"{G.name} has a center")
    subs = index2_subgroups(G)
    if len(subs) < 2:
        raise HypothesesFail("need two", f"{G.name} has {len(subs)} index-2 subgroup(s)")
    good = [H for H in subs if len(set(centralizer(G, H.elements).elements) & H.element_set) == 1]
    return [(good[i], good[j]) for i in range(len(good)) for j in range(i + 1, len(good))]


# ---------------------------------------------------------------------------
# random instances for the lemma sweep


def random_subset(rng: random.Random, G: Group, lo: int, hi: int) -> list[int]:
    k = rng.randint(lo, min(hi, G.order))
    return sorted(rng.sample(range(G.order), k))

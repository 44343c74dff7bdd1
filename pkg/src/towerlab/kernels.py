"""Kernels of the evaluation maps x -> g (and x -> g, y -> h) as decision
procedures, affiliation witnesses, and reconstruction of an automorphism
from kernel data alone.

Words live in the free product of <A> with the free group on x (and y).
A kernel is never stored as a set: it is an oracle that evaluates a word at
a fixed assignment and tests for the identity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .autgroup import AutGroup, automorphism_group, is_automorphism
from .errors import MissingAssignment, NotAnAutomorphism, NotCenterless, NotSpecial
from .groups import Group, is_centerless, subgroup_generated
from .special import are_equivalent, is_special_pair
from .words import Param, Var, Word, enumerate_reduced_words, evaluate_word


@dataclass(frozen=True)
class KernelOracle:
    """ker of the map sending x to ``x`` (and y to ``y``), fixing <A>."""

    group: Group = field(repr=False)
    A: frozenset[int]
    x: int
    y: int | None = None

    @classmethod
    def build(cls, group: Group, A: Iterable[int], x: int, y: int | None = None) -> "KernelOracle":
        span = subgroup_generated(group, group.check_index(A)).elements
        group.check_index([x] + ([] if y is None else [y]))
        return cls(group, frozenset(span), x, y)

    def value(self, w: Word) -> int:
        if self.y is None and "y" in w.variables():
            raise MissingAssignment("word uses y but the oracle only assigns x")
        return evaluate_word(self.group, w, self.x, self.y, self.A)


def kernel_contains(K: KernelOracle, w: Word) -> bool:
    return K.value(w) == 0


def separating_word(G: Group, A: Iterable[int], g1: int, g2: int) -> Word | None:
    """A shortest word in exactly one of ker(x -> g1), ker(x -> g2), or None.

    Breadth-first over pairs of values, so the first pair with exactly one
    coordinate trivial gives a minimal separating word.
    """
    params = [p for p in subgroup_generated(G, G.check_index(A)).elements if p != 0]
    letters = [(Var("x", 1), g1, g2), (Var("x", -1), G.inv(g1), G.inv(g2))]
    letters += [(Param(p), p, p) for p in params]
    rows = G.rows
    seen = {(0, 0): Word()}
    queue = deque([(0, 0)])
    while queue:
        u, v = queue.popleft()
        w = seen[(u, v)]
        for tok, s, t in letters:
            pair = (rows[u][s], rows[v][t])
            if pair in seen:
                continue
            word = Word(w.tokens + (tok,))
            if (pair[0] == 0) != (pair[1] == 0):
                return word
            seen[pair] = word
            queue.append(pair)
    return None


def kernel_injectivity(G: Group, A: Iterable[int]) -> bool:
    """Whether g -> ker(x -> g) is injective on G.

    Two kernels coincide exactly when the elements are E-equivalent over A,
    so this runs the exact E test on every pair.  Only defined for special
    pairs, where the answer must be yes.
    """
    A = list(A)
    if not is_special_pair(G, A):
        raise NotSpecial(f"({G.name}, A) is not a special pair")
    n = G.order
    return all(not are_equivalent(G, A, g1, g2) for g1 in range(n) for g2 in range(g1 + 1, n))


@dataclass(frozen=True)
class Affiliation:
    element: int
    witness: Word
    bound: int


def _letters(K: KernelOracle) -> list[tuple[Word, int]]:
    G = K.group
    out = [(Word.param(a), a) for a in sorted(K.A) if a != 0]
    if K.y is not None:
        out += [(Word.var("y"), K.y), (Word.var("y", -1), G.inv(K.y))]
    out += [(Word.var("x"), K.x), (Word.var("x", -1), G.inv(K.x))]
    return out


def _reach(K: KernelOracle, bound: int) -> dict[int, Word]:
    """A word for every element of <A, x, y> reachable within ``bound`` letters.

    Parameters are tried before y and y before x, so elements of A get their
    own parameter and the y-value gets y whenever those are shortest.
    """
    rows = K.group.rows
    words = {0: Word()}
    frontier = [0]
    for _ in range(bound):
        nxt = []
        for u in frontier:
            for w, val in _letters(K):
                v = rows[u][val]
                if v not in words:
                    words[v] = Word(words[u].tokens + w.tokens)
                    nxt.append(v)
        if not nxt:
            break
        frontier = nxt
    for a in K.A:
        words[a] = Word.param(a) if a else Word()
    if K.y is not None and K.y not in K.A:
        words[K.y] = Word.var("y")
    return words


def find_affiliation(K: KernelOracle, g: int, bound: int | None = None) -> Affiliation | None:
    bound = 2 * K.group.order if bound is None else bound
    if bound < 1:
        raise ValueError("bound must be >= 1")
    w = _reach(K, bound).get(g)
    return None if w is None else Affiliation(g, w, bound)


# ---------------------------------------------------------------------------
# reconstruction


@dataclass(frozen=True)
class KernelCheck:
    """Results for one h: the seven conditions on B_h plus the induced map."""

    h: int
    conditions: tuple[bool, ...]
    domain: tuple[int, ...]
    induced: Mapping[int, int]
    agrees_with_conjugation: bool
    well_defined: bool

    @property
    def passed(self) -> bool:
        return all(self.conditions) and self.agrees_with_conjugation and self.well_defined

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "conditions": list(self.conditions),
            "domain_size": len(self.domain),
            "agrees_with_conjugation": self.agrees_with_conjugation,
            "well_defined": self.well_defined,
        }


@dataclass(frozen=True)
class ReconstructionReport:
    group: str
    rho: tuple[int, ...]
    checks: tuple[KernelCheck, ...]
    union_consistent: bool
    union_total: bool
    union_matches: bool

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and self.union_consistent and self.union_total and self.union_matches

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "rho": list(self.rho),
            "checks": [c.to_json() for c in self.checks],
            "union_consistent": self.union_consistent,
            "union_total": self.union_total,
            "union_matches": self.union_matches,
            "passed": self.passed,
        }


def _schreier_words(K: KernelOracle, reach: dict[int, Word]) -> list[Word]:
    """sigma_u * s * sigma_(us)^-1 over all reached u and letters s.

    These generate the kernel as a subgroup (Schreier's lemma with the
    reach map as transversal).
    """
    T = K.group
    out = []
    for u, wu in reach.items():
        for w, val in _letters(K):
            v = T.rows[u][val]
            out.append(Word(wu.tokens + w.tokens + reach[v].inverse_in(T).tokens))
    return out


def _param_generators(T: Group, params: Iterable[int]) -> list[int]:
    gens: list[int] = []
    span = {0}
    for p in sorted(params):
        if p not in span:
            gens.append(p)
            span = set(subgroup_generated(T, gens).elements)
    return gens


def _check_h(
    T: Group,
    A_T: frozenset[int],
    rho: int,
    h_T: int,
    base: Sequence[int],
    target: Sequence[int],
    override: Mapping[int, Word],
    y_free_len: int,
) -> KernelCheck:
    """All checks for B = ker(x -> rho, y -> h) inside T.

    ``base`` lists the T-indices of the base group's elements (in base order)
    and ``target[g]`` is the base index of rho g rho^-1, used only for the
    final comparison.
    """
    B = KernelOracle(T, A_T, rho, h_T)
    H = KernelOracle(T, A_T, rho)
    inv = T.inverse
    bound = 2 * T.order
    reach = _reach(B, bound)
    in_base = {t: i for i, t in enumerate(base)}

    def conj_inv(w: Word) -> Word:
        return w.inverse_in(T)

    def mul(*ws: Word) -> Word:
        return Word(tuple(t for w in ws for t in w.tokens))

    domain = sorted(in_base[t] for t in reach if t in in_base)
    wit = {g: reach[base[g]] for g in domain}
    wit.update({g: w for g, w in override.items() if g in wit})

    # (1) B normal: Schreier generators lie in B and stay there under
    # conjugation by a generating set of the free product
    schreier = _schreier_words(B, reach)
    conj_letters = [Word.var("x"), Word.var("x", -1), Word.var("y"), Word.var("y", -1)]
    for a in _param_generators(T, A_T):
        conj_letters += [Word.param(a), Word.param(inv[a])]
    c1 = all(
        kernel_contains(B, r) and kernel_contains(B, mul(s, r, conj_inv(s)))
        for r in schreier
        for s in conj_letters
    )

    # (2) H inside B, and y-free words of B are exactly those of H
    h_reach = _reach(H, bound)
    c2 = all(kernel_contains(B, r) for r in _schreier_words(H, h_reach))
    params = sorted(a for a in A_T if a)
    for w in enumerate_reduced_words(params, y_free_len):
        if kernel_contains(B, w) != kernel_contains(H, w):
            c2 = False
            break

    # (3) each a in A is affiliated with witness a
    c3 = all(
        base[g] in A_T and wit[g] == (Word.param(base[g]) if base[g] else Word())
        and B.value(wit[g]) == base[g]
        for g in domain
        if base[g] in A_T
    ) and all(a in reach for a in A_T)

    # (4) h is affiliated and y witnesses it
    h = in_base[h_T]
    c4 = h in wit and kernel_contains(B, mul(Word.var("y"), conj_inv(wit[h])))

    # (5) a second witness, built through a different last letter, agrees
    # with the first modulo B
    c5 = True
    for g in domain:
        t = base[g]
        for w, val in _letters(B):
            u = T.rows[t][inv[val]]
            if u not in reach:
                continue
            alt = mul(reach[u], w)
            if B.value(alt) != t or not kernel_contains(B, mul(wit[g], conj_inv(alt))):
                c5 = False

    # (6) closure under products with product witnesses
    c6 = True
    for g1 in domain:
        for g2 in domain:
            p = T.rows[base[g1]][base[g2]]
            if p not in in_base or in_base[p] not in wit:
                c6 = False
                continue
            if not kernel_contains(B, mul(wit[g1], wit[g2], conj_inv(wit[in_base[p]]))):
                c6 = False

    # (7) x sigma_g x^-1 is again a witness; the element it witnesses is the
    # induced image of g
    x, xi = Word.var("x"), Word.var("x", -1)
    induced: dict[int, int] = {}
    c7 = True
    for g in domain:
        conj = mul(x, wit[g], xi)
        hits = [g2 for g2 in domain if kernel_contains(B, mul(conj, conj_inv(wit[g2])))]
        if hits:
            induced[g] = hits[0]
        else:
            c7 = False

    # well-definedness: distinct affiliated elements never have witnesses
    # equal modulo B
    well_defined = all(
        not kernel_contains(B, mul(wit[g1], conj_inv(wit[g2])))
        for g1 in domain
        for g2 in domain
        if g1 != g2
    )
    covers = all(a in reach for a in A_T) and h in wit
    agrees = covers and len(induced) == len(domain) and all(induced[g] == target[g] for g in domain)
    return KernelCheck(in_base[h_T], (c1, c2, c3, c4, c5, c6, c7), tuple(domain), induced, agrees, well_defined)


def verify_reconstruction(
    G: Group,
    A: Iterable[int],
    rho: int | Sequence[int],
    witness_override: Mapping[int, Mapping[int, Word]] | None = None,
    aut: AutGroup | None = None,
    y_free_len: int = 2,
) -> ReconstructionReport:
    """Recover an automorphism rho of G from the kernels ker(x -> rho, y -> h).

    Everything is computed inside Aut(G), with G identified with its inner
    automorphisms.  ``rho`` is an index into ``aut.perms`` or an explicit
    permutation of G.  ``witness_override`` maps h to replacement witnesses
    {g: word}; it exists for negative controls.
    """
    A = sorted(set(G.check_index(A)))
    if not is_centerless(G):
        raise NotCenterless(f"{G.name} has a nontrivial center")
    if not is_special_pair(G, A):
        raise NotSpecial(f"({G.name}, A) is not a special pair")
    aut = aut or automorphism_group(G)
    if isinstance(rho, int):
        perm = aut.perms[rho]
        r = rho
    else:
        perm = tuple(int(v) for v in rho)
        if not is_automorphism(G, perm):
            raise NotAnAutomorphism(f"{perm} is not an automorphism of {G.name}")
        r = aut.index_of(perm)
    T = aut.group
    base = aut.inner.map
    A_T = frozenset(subgroup_generated(T, [base[a] for a in A]).elements)
    override = witness_override or {}
    checks = []
    for h in G.elements():
        checks.append(_check_h(T, A_T, r, base[h], base, perm, override.get(h, {}), y_free_len))
    union: dict[int, int] = {}
    consistent = True
    for c in checks:
        for g, v in c.induced.items():
            if union.setdefault(g, v) != v:
                consistent = False
    total = len(union) == G.order
    matches = total and all(union[g] == perm[g] for g in G.elements())
    return ReconstructionReport(G.name, perm, tuple(checks), consistent, total, matches)

"""Verification suites run by ``towerlab verify``.

Each suite returns a list of :class:`CheckResult`; a :class:`RunReport`
collects them with the seed and wall-clock timings.  Everything except the
timings is a deterministic function of (catalog, seed).
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .autgroup import automorphism_group
from .catalog import CatalogEntry, build_catalog
from .encodings import (
    CodedSeq,
    decode_set_pair,
    decode_word,
    encode_set_pair,
    encode_word,
    pair_code,
    seq_code,
    seq_decode,
    unpair,
    unzigzag,
    zigzag,
)
from .errors import CentralizerNontrivial, HypothesesFail, UnknownSuite
from .groups import Subgroup, subgroup_generated
from .kernels import kernel_injectivity, separating_word, verify_reconstruction
from .special import (
    are_equivalent,
    build_example4,
    check_mylemma,
    check_special_ind,
    example4_candidates,
    is_special_pair,
    is_weakly_special,
    random_subset,
    restriction_injectivity,
)
from .structures import Structure, nlg_harness, orbit_structure, structure_aut_group
from .towers import (
    AutTower,
    automorphism_tower,
    check_norm_tower_identities,
    corrupt_embedding,
    normalizer_tower,
    rank_image_ok,
)
from .words import Param, Var, Word, enumerate_reduced_words

SUITES = (
    "tower",
    "normalizer",
    "special",
    "weakspecial",
    "mylemma",
    "example4",
    "encoding",
    "structures",
    "appendix",
)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    check: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"suite": self.suite, "check": self.check, "passed": self.passed, "detail": self.detail}


@dataclass
class RunReport:
    command: str
    seed: int
    results: list[CheckResult]
    timing: dict[str, float]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "passed": self.passed,
            "results": [r.to_json() for r in self.results],
            "timing": self.timing,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "RunReport":
        results = [CheckResult(r["suite"], r["check"], r["passed"], r["detail"]) for r in data["results"]]
        return cls(data["command"], data["seed"], results, dict(data["timing"]))


# ---------------------------------------------------------------------------
# shared data


@lru_cache(maxsize=None)
def _catalog() -> tuple[CatalogEntry, ...]:
    return tuple(build_catalog())


def _centerless() -> list[CatalogEntry]:
    return [e for e in _catalog() if e.centerless]


@lru_cache(maxsize=None)
def _tower(name: str) -> AutTower:
    entry = next(e for e in _catalog() if e.name == name)
    return automorphism_tower(entry.group)


# ---------------------------------------------------------------------------
# suites


def suite_tower(seed: int) -> list[CheckResult]:
    out = []
    for e in _centerless():
        T = _tower(e.name)
        again = automorphism_tower(e.group)
        same = again.tau == T.tau and [g.rows for g in again.levels] == [g.rows for g in T.levels]
        ok = T.tau <= 3 and same
        detail = {"tau": T.tau, "level_orders": [g.order for g in T.levels], "deterministic": same}
        out.append(CheckResult("tower", e.name, ok, detail))
    return out


def _random_subgroups(rng: random.Random, count: int) -> list[tuple[CatalogEntry, Subgroup]]:
    pool = [e for e in _catalog() if e.order <= 72]
    out = []
    while len(out) < count:
        e = rng.choice(pool)
        gens = rng.sample(range(e.order), rng.randint(1, 2))
        out.append((e, subgroup_generated(e.group, gens)))
    return out


def suite_normalizer(seed: int) -> list[CheckResult]:
    out = []
    for e in _centerless():
        T = _tower(e.name)
        rep = check_norm_tower_identities(T)
        out.append(CheckResult("normalizer", f"identities:{e.name}", rep.passed, rep.to_json()))
        if T.tau >= 1:
            bad = check_norm_tower_identities(corrupt_embedding(T))
            out.append(
                CheckResult(
                    "normalizer",
                    f"corrupted-embedding-flagged:{e.name}",
                    not bad.passed,
                    {"identities": bad.to_json()["identities"]},
                )
            )
    rng = random.Random(seed)
    for i, (e, H) in enumerate(_random_subgroups(rng, 40)):
        chain = normalizer_tower(e.group, H)
        out.append(
            CheckResult(
                "normalizer",
                f"rank:{i:02d}:{e.name}",
                rank_image_ok(chain),
                {"H": list(H.elements), "tau": chain.tau, "orders": chain.orders()},
            )
        )
    return out


def suite_special(seed: int) -> list[CheckResult]:
    out = []
    for e in _centerless():
        A = list(e.group.elements())
        rep = check_special_ind(_tower(e.name), A)
        detail = {"levels": [{"order": o, "special": s, "centralizer_trivial": c} for o, s, c in rep.levels]}
        out.append(CheckResult("special", f"levels:{e.name}", rep.passed, detail))
    # the smallest special pairs: (S3, S3) and a non-example (C3, {})
    s3 = next(e for e in _catalog() if e.name == "S3").group
    c3 = next(e for e in _catalog() if e.name == "C3").group
    out.append(CheckResult("special", "S3-over-S3", is_special_pair(s3, range(6)), {}))
    out.append(CheckResult("special", "C3-over-nothing-not-special", not is_special_pair(c3, []), {}))
    return out


def suite_weakspecial(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for e in _centerless():
        G = e.group
        T = _tower(e.name)
        subsets = [list(G.elements())] + [random_subset(rng, G, 1, 3) for _ in range(3)]
        for k, A in enumerate(subsets):
            special = is_special_pair(G, A)
            weak = is_weakly_special(G, A, tower=T) if special else None
            try:
                restr = restriction_injectivity(T, A)
            except CentralizerNontrivial as exc:
                restr = None
                skipped = exc.level
            else:
                skipped = None
            ok = (not special or weak) and restr is not False
            detail = {"A": A, "special": special, "weakly_special": weak, "restriction_injective": restr}
            if skipped is not None:
                detail["centralizer_nontrivial_at"] = skipped
            out.append(CheckResult("weakspecial", f"{e.name}:{k}", bool(ok), detail))
    return out


def _mylemma_instances(rng: random.Random, count: int):
    """(G2, G1, A) with G1 normal in G2, C(G1) = 1 and (G1, A) special."""
    sources = []
    for e in _centerless():
        T = _tower(e.name)
        for b in range(T.tau):
            img = T.embeddings[b].image()
            sources.append((f"{e.name}^{b + 1}>{e.name}^{b}", T.levels[b + 1], img))
        if e.order <= 60:
            # Inn(G) inside Aut(G), and inside <Inn(G), one outer automorphism>
            aut = T.auts[0]
            inn = aut.inner.image()
            sources.append((f"Aut({e.name})>Inn", aut.group, inn))
            outer = [g for g in aut.group.elements() if g not in inn.element_set]
            if outer:
                mid = subgroup_generated(aut.group, list(inn.elements) + [outer[0]])
                mid_group, local = mid.as_group(f"<Inn,o>({e.name})")
                sources.append((f"<Inn,o>({e.name})>Inn", mid_group, Subgroup(mid_group, tuple(sorted(local[g] for g in inn.elements)))))
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        label, G2, G1 = sources[rng.randrange(len(sources))]
        A = sorted(rng.sample(G1.elements, rng.randint(1, min(3, G1.order))))
        if not is_special_pair(G2, A, within=G1.elements):
            continue
        out.append((label, G2, G1, A))
    return out


def suite_mylemma(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    instances = _mylemma_instances(rng, 100)
    out = []
    counterexamples = 0
    for i, (label, G2, G1, A) in enumerate(instances):
        rep = check_mylemma(G2, G1, A)
        good = rep.hypotheses_hold and rep.implication_holds
        counterexamples += not good
        out.append(CheckResult("mylemma", f"{i:03d}:{label}", good, {"A": A, **rep.to_json()}))
    out.append(
        CheckResult(
            "mylemma",
            "instance-count",
            len(instances) == 100 and counterexamples == 0,
            {"instances": len(instances), "counterexamples": counterexamples},
        )
    )
    return out


def suite_example4(seed: int) -> list[CheckResult]:
    out = []
    witnesses = 0
    for e in _centerless():
        if e.order > 100:
            continue
        try:
            pairs = example4_candidates(e.group)
        except HypothesesFail as exc:
            out.append(CheckResult("example4", f"candidates:{e.name}", True, {"skipped": exc.condition}))
            continue
        if not pairs:
            out.append(CheckResult("example4", f"candidates:{e.name}", True, {"skipped": "no centerless index-2 pair"}))
            continue
        for k, (H1, H2) in enumerate(pairs):
            wit = build_example4(e.group, H1, H2)
            witnesses += wit.verified
            out.append(CheckResult("example4", f"witness:{e.name}:{k}", wit.verified, wit.to_json()))
    line = f"{witnesses} verified witness(es)" if witnesses else "no finite witness in catalog"
    out.append(CheckResult("example4", "summary", True, {"outcome": line, "witnesses": witnesses}))
    return out


def suite_encoding(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    ok = all(unpair(pair_code(x, y)) == (x, y) for x in range(60) for y in range(60))
    ok &= all(pair_code(*unpair(z)) == z for z in range(5000))
    ok &= all(pair_code(*unpair(z)) == z for z in (rng.randrange(10**30) for _ in range(10_000)))
    out.append(CheckResult("encoding", "pair", ok, {}))

    small = [list(s) for n in range(5) for s in itertools.product(range(4), repeat=n)]
    ok = all(seq_decode(seq_code(s)) == s for s in small)
    ok &= all(seq_code(seq_decode(c)) == c for c in range(5000))
    for _ in range(10_000):
        s = [rng.randrange(1000) for _ in range(rng.randrange(7))]
        ok &= seq_decode(seq_code(s)) == s
    out.append(CheckResult("encoding", "seq", ok, {}))

    ok = all(unzigzag(zigzag(n)) == n for n in range(-500, 500))
    out.append(CheckResult("encoding", "zigzag", ok, {}))

    params = [1, 2, 3]
    words = list(enumerate_reduced_words(params, 6, adjacent_params=True))
    codes = {}
    ok = True
    for w in words:
        c = encode_word(w, 1, 2, params)
        ok &= decode_word(c, 1, 2) == w
        codes[c] = w
    out.append(CheckResult("encoding", "word-injective", ok and len(codes) == len(words), {"words": len(words)}))

    ok = True
    for _ in range(10_000):
        toks = []
        for _ in range(rng.randrange(1, 6)):
            if rng.random() < 0.5:
                toks.append(Var("x", rng.choice([-3, -2, -1, 1, 2, 3])))
            else:
                toks.append(Param(rng.choice(params)))
        w = Word(tuple(toks))
        ok &= decode_word(encode_word(w, 1, 2), 1, 2) == w
    out.append(CheckResult("encoding", "word-random", ok, {}))

    ok = True
    for _ in range(10_000):
        a = {rng.randrange(5) for _ in range(rng.randint(1, 4))}
        b = {tuple(rng.randrange(5) for _ in range(rng.randrange(4))) for _ in range(rng.randint(1, 4))}
        ok &= decode_set_pair(encode_set_pair(a, b)) == (frozenset(a), frozenset(b))
    out.append(CheckResult("encoding", "set-pair", ok, {}))
    ok = CodedSeq.from_runs([(1, 2), (1, 3), (2, 0), (3, 1)]).runs == ((1, 5), (3, 1))
    out.append(CheckResult("encoding", "run-merge", ok, {}))
    return out


def random_structure(rng: random.Random, m: int) -> Structure:
    rels = {}
    for j in range(rng.randint(1, 3)):
        arity = rng.randint(1, 3)
        count = rng.randint(1, 2 * m)
        rels[f"R{j}"] = [tuple(rng.randrange(m) for _ in range(arity)) for _ in range(count)]
    return Structure.build(m, rels, f"rand{m}")


def suite_structures(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    c4 = Structure.build(4, {"E": [(i, (i + d) % 4) for i in range(4) for d in (1, 3)]}, "C4")
    out.append(CheckResult("structures", "cycle4-aut-order", structure_aut_group(c4).group.order == 8, {}))
    for i in range(20):
        m = rng.randint(2, 6)
        S = random_structure(rng, m)
        aut = structure_aut_group(S)
        orb = structure_aut_group(orbit_structure(S, m))
        out.append(
            CheckResult(
                "structures",
                f"orbit:{i:02d}",
                orb.perms == aut.perms,
                {"size": m, "aut_order": aut.group.order},
            )
        )
        if aut.group.order > 1:
            g = rng.randrange(1, aut.group.order)
            rep, chain = nlg_harness(S, [g], aut)
            out.append(CheckResult("structures", f"nlg:{i:02d}", rank_image_ok(chain), rep.to_json()))
    return out


def suite_appendix(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    pairs = []
    for e in _centerless():
        if e.order > 24:
            continue
        G = e.group
        pairs.append((e.name, G, list(G.elements())))
        for _ in range(3):
            A = random_subset(rng, G, 1, 3)
            if is_special_pair(G, A):
                pairs.append((f"{e.name}/{A}", G, A))
        aut = _tower(e.name).auts[0]
        if aut.order <= 24:
            pairs.append((f"Aut({e.name})/Inn", aut.group, list(aut.inner.map)))
    for label, G, A in pairs:
        inj = kernel_injectivity(G, A)
        # the exact E test and the separating-word search must agree
        agree = all(
            (separating_word(G, A, g1, g2) is None) == are_equivalent(G, A, g1, g2)
            for g1 in range(min(G.order, 8))
            for g2 in range(G.order)
        )
        out.append(CheckResult("appendix", f"injective:{label}", inj and agree, {"order": G.order}))

    for name in ("S3", "D5"):
        G = next(e for e in _catalog() if e.name == name).group
        aut = automorphism_group(G)
        reports = [verify_reconstruction(G, list(G.elements()), r, aut=aut) for r in range(aut.order)]
        ok = all(r.passed for r in reports)
        detail = {"automorphisms": aut.order, "failed": [i for i, r in enumerate(reports) if not r.passed]}
        out.append(CheckResult("appendix", f"reconstruct:{name}", ok, detail))

    # well-definedness control: give element 1 the witness of element 2
    G = next(e for e in _catalog() if e.name == "S3").group
    aut = automorphism_group(G)
    fake = {1: Word.param(aut.inner.map[2])}
    bad = verify_reconstruction(G, list(G.elements()), 0, aut=aut, witness_override={0: fake})
    flagged = not bad.checks[0].well_defined and not bad.passed
    out.append(CheckResult("appendix", "well-definedness-violation-flagged", flagged, bad.checks[0].to_json()))
    return out


_RUNNERS: dict[str, Callable[[int], list[CheckResult]]] = {
    "tower": suite_tower,
    "normalizer": suite_normalizer,
    "special": suite_special,
    "weakspecial": suite_weakspecial,
    "mylemma": suite_mylemma,
    "example4": suite_example4,
    "encoding": suite_encoding,
    "structures": suite_structures,
    "appendix": suite_appendix,
}


def run_suite(name: str, seed: int = 0, command: str | None = None) -> RunReport:
    if name != "all" and name not in _RUNNERS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    names = list(SUITES) if name == "all" else [name]
    results: list[CheckResult] = []
    timing = {}
    for n in names:
        t0 = time.perf_counter()
        results += _RUNNERS[n](seed)
        timing[n] = round(time.perf_counter() - t0, 3)
    results.sort(key=lambda r: (r.suite, r.check))
    return RunReport(command or f"verify --suite {name} --seed {seed}", seed, results, timing)

"""Automorphism towers, normalizer towers and the identities linking them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .autgroup import AutGroup, automorphism_group
from .errors import CapExceeded, InvalidSubgroup, NotCenterless
from .groups import (
    Group,
    Morphism,
    Subgroup,
    center,
    centralizer,
    make_subgroup,
    normalizer,
)

DEFAULT_TOWER_CAP = 10


@dataclass(frozen=True)
class AutTower:
    """G^0 <= G^1 <= ... <= G^tau, each level re-indexed with identity 0.

    ``embeddings[a]`` is the inner embedding G^a -> G^(a+1) and
    ``auts[a]`` the full Aut(G^a) computation behind it; ``auts[tau]`` is the
    completeness witness of the top level.
    """

    levels: tuple[Group, ...]
    embeddings: tuple[Morphism, ...]
    tau: int
    base_images: tuple[Subgroup, ...]
    auts: tuple[AutGroup, ...] = field(repr=False)

    @property
    def base(self) -> Group:
        return self.levels[0]

    @property
    def top(self) -> Group:
        return self.levels[-1]

    def lift(self, g: int, src: int, dst: int | None = None) -> int:
        """Carry an element of level ``src`` up to level ``dst`` (default top)."""
        dst = self.tau if dst is None else dst
        for a in range(src, dst):
            g = self.embeddings[a].map[g]
        return g

    def level_image(self, beta: int, dst: int | None = None) -> tuple[int, ...]:
        """The image of G^beta inside G^dst, as a sorted index tuple."""
        return tuple(sorted({self.lift(g, beta, dst) for g in self.levels[beta].elements()}))


@dataclass(frozen=True)
class NormChain:
    group: Group
    levels: tuple[Subgroup, ...]
    tau: int

    def orders(self) -> list[int]:
        return [s.order for s in self.levels]


def automorphism_tower(G: Group, cap: int = DEFAULT_TOWER_CAP, order_cap: int | None = None) -> AutTower:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if center(G).order != 1:
        raise NotCenterless(f"{G.name} has a nontrivial center")
    levels = [G]
    embeddings: list[Morphism] = []
    auts: list[AutGroup] = []
    images = [Subgroup(G, tuple(G.elements()))]
    while True:
        alpha = len(levels) - 1
        aut = automorphism_group(levels[-1], order_cap, name=f"{G.name}^{alpha + 1}")
        auts.append(aut)
        if not aut.inner.is_injective:
            raise NotCenterless(f"level {alpha} of {G.name} has a center")
        if aut.inner.is_surjective:
            break
        if alpha + 1 >= cap:
            raise CapExceeded(f"automorphism_tower({G.name}) height", alpha + 1, cap)
        embeddings.append(aut.inner)
        levels.append(aut.group)
        images.append(Subgroup(aut.group, tuple(sorted({aut.inner.map[g] for g in images[-1]}))))
    return AutTower(tuple(levels), tuple(embeddings), len(levels) - 1, tuple(images), tuple(auts))


def normalizer_tower(G: Group, H: Subgroup) -> NormChain:
    cur = make_subgroup(G, H.elements) if H.parent is not G else H
    make_subgroup(G, cur.elements)
    levels = [cur]
    while True:
        nxt = normalizer(G, levels[-1])
        if nxt.elements == levels[-1].elements:
            break
        levels.append(nxt)
    # levels[tau] is the fixed point; keep one repeated entry so that
    # levels[tau + 1] == levels[tau] is visible to callers
    tau = len(levels) - 1
    levels.append(levels[-1])
    return NormChain(G, tuple(levels), tau)


def tower_rank(chain: NormChain) -> dict[int, int]:
    """F(g) = a when g lies in levels[a+1] minus levels[a], else 0."""
    rank = {g: 0 for g in chain.group.elements()}
    for a in range(chain.tau):
        inner = chain.levels[a].element_set
        for g in chain.levels[a + 1].elements:
            if g not in inner:
                rank[g] = a
    return rank


def rank_image_ok(chain: NormChain) -> bool:
    image = set(tower_rank(chain).values())
    return image == set(range(chain.tau)) | {0}


@dataclass(frozen=True)
class NormTowerReport:
    name: str
    tau: int
    level_orders: tuple[int, ...]
    centralizer_trivial: bool
    normalizer_step: bool
    normalizer_tower_levels: bool
    rank_surjective: bool
    details: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return (
            self.centralizer_trivial
            and self.normalizer_step
            and self.normalizer_tower_levels
            and self.rank_surjective
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "tau": self.tau,
            "level_orders": list(self.level_orders),
            "identities": {
                "centralizer_trivial": self.centralizer_trivial,
                "normalizer_step": self.normalizer_step,
                "normalizer_tower_levels": self.normalizer_tower_levels,
                "rank_surjective": self.rank_surjective,
            },
        }


def _image_subgroup(top: Group, elems: Sequence[int]) -> Subgroup | None:
    try:
        return make_subgroup(top, elems)
    except InvalidSubgroup:
        return None


def check_norm_tower_identities(tower: AutTower) -> NormTowerReport:
    """Check, inside the top level, that C(G) = 1, nor(G^b) = G^(b+1) and
    that the normalizer tower of G climbs through exactly the level images."""
    top = tower.top
    tau = tower.tau
    details = []
    images = [_image_subgroup(top, tower.level_image(b)) for b in range(tau + 1)]
    for b, img in enumerate(images):
        if img is None:
            details.append(f"image of level {b} is not a subgroup of the top")

    base = images[0]
    cent_ok = base is not None and centralizer(top, base.elements).order == 1
    if not cent_ok:
        details.append("centralizer of the base image is nontrivial")

    step_ok = True
    for b in range(tau):
        if images[b] is None or images[b + 1] is None:
            step_ok = False
            continue
        if normalizer(top, images[b]).elements != images[b + 1].elements:
            step_ok = False
            details.append(f"nor(G^{b}) != G^{b + 1}")
    if images[tau] is not None and images[tau].order != top.order:
        step_ok = False
        details.append("top image is not the whole top level")

    chain_ok = False
    rank_ok = False
    if base is not None:
        chain = normalizer_tower(top, base)
        chain_ok = chain.tau == tau and all(
            images[b] is not None and chain.levels[b].elements == images[b].elements
            for b in range(tau + 1)
        )
        if not chain_ok:
            details.append(f"normalizer tower has tau {chain.tau}, tower has {tau}")
        rank_ok = rank_image_ok(chain)
    return NormTowerReport(
        tower.base.name,
        tau,
        tuple(g.order for g in tower.levels),
        cent_ok,
        step_ok,
        chain_ok,
        rank_ok,
        tuple(details),
    )


def corrupt_embedding(tower: AutTower, level: int = 0) -> AutTower:
    """Negative control: knock one element of an embedding outside its image.

    The result is no longer a valid tower; it exists so that tests can see
    :func:`check_norm_tower_identities` flag the damage.
    """
    emb = tower.embeddings[level]
    image = set(emb.map)
    outside = next(v for v in emb.target.elements() if v not in image)
    bad = list(emb.map)
    bad[-1] = outside
    forged = Morphism(emb.source, emb.target, tuple(bad), emb.certified)
    embeddings = list(tower.embeddings)
    embeddings[level] = forged
    return AutTower(tower.levels, tuple(embeddings), tower.tau, tower.base_images, tower.auts)

"""Families of involution-compatible subsets and boundary-type families.

`family_ftilde` collects the nonempty connected subsets on which the ambient
opposition involution restricts to the subset's own opposition involution;
`family_f` keeps those whose neighbor fringe is a single involution orbit and
which extend compatibly; `family_fcirc` drops the rank-one members covered by
a full B/C/G2 component.  `family_b` collects the complex types of the
nontrivial standard real boundary components of a compactification datum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .diagram import (
    DynkinDiagram,
    classify_component,
    components,
    opposition_involution,
    theta_plus,
)
from .index import Level, TwoLevelIndex, component_pairs
from .satake import diagram_context, epsilon, k_context, k_delta, kappa


@dataclass(frozen=True)
class Family:
    kind: str  # "Ftilde" | "F" | "Fstar" | "Fcirc" | "B" | "Bstar"
    component: frozenset[str]
    members: frozenset[frozenset[str]]

    def sorted_members(self, diagram: DynkinDiagram) -> tuple[frozenset[str], ...]:
        return tuple(sorted(
            self.members,
            key=lambda s: (len(s), tuple(sorted(diagram.position(n) for n in s)))))


@dataclass(frozen=True)
class HasseDiagram:
    nodes: tuple[frozenset[str], ...]
    covers: tuple[tuple[frozenset[str], frozenset[str]], ...]


@lru_cache(maxsize=4096)
def connected_subsets(diagram: DynkinDiagram, component: frozenset) -> tuple[frozenset[str], ...]:
    """All nonempty connected subsets of a component, canonically ordered."""
    nodes = diagram.ordered(component)
    out = []
    for r in range(1, len(nodes) + 1):
        for combo in itertools.combinations(nodes, r):
            sub = frozenset(combo)
            start = combo[0]
            seen = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v in diagram.neighbors(u):
                    if v in sub and v not in seen:
                        seen.add(v)
                        stack.append(v)
            if len(seen) == r:
                out.append(sub)
    return tuple(out)


def _iota_matches(diagram: DynkinDiagram, iota, psi: frozenset) -> bool:
    if iota.image(psi) != psi:
        return False
    sub_iota = opposition_involution(diagram.subdiagram(psi))
    return all(iota(x) == sub_iota(x) for x in psi)


@lru_cache(maxsize=4096)
def family_ftilde(diagram: DynkinDiagram, component: frozenset) -> Family:
    iota = opposition_involution(diagram)
    members = frozenset(
        psi for psi in connected_subsets(diagram, component)
        if _iota_matches(diagram, iota, psi))
    return Family("Ftilde", frozenset(component), members)


def _orbit_count(iota, subset) -> int:
    seen: set[str] = set()
    count = 0
    for x in subset:
        if x in seen:
            continue
        seen.add(x)
        seen.add(iota(x))
        count += 1
    return count


def _fringe_small(diagram, iota, psi) -> bool:
    return _orbit_count(iota, theta_plus(diagram, psi) - psi) <= 1


@lru_cache(maxsize=4096)
def family_f(diagram: DynkinDiagram, component: frozenset) -> Family:
    component = frozenset(component)
    iota = opposition_involution(diagram)
    ftilde = family_ftilde(diagram, component).members
    members = set()
    for psi in ftilde:
        if not _fringe_small(diagram, iota, psi):
            continue
        plus = theta_plus(diagram, psi)
        for prime in ftilde:
            if not plus <= prime or not _fringe_small(diagram, iota, prime):
                continue
            rest = prime - plus
            rest_comps = [frozenset(c) for c in components(diagram.subdiagram(rest))]
            if all(c in ftilde for c in rest_comps):
                members.add(psi)
                break
    return Family("F", component, frozenset(members))


def _drop_small_non_components(diagram, fam: Family, kind: str) -> Family:
    full = {frozenset(c) for c in components(diagram)}
    members = frozenset(
        psi for psi in fam.members if len(psi) > 1 or psi in full)
    return Family(kind, fam.component, members)


def family_fstar(diagram: DynkinDiagram, component) -> Family:
    return _drop_small_non_components(
        diagram, family_ftilde(diagram, frozenset(component)), "Fstar")


@lru_cache(maxsize=4096)
def family_fcirc(diagram: DynkinDiagram, component: frozenset) -> Family:
    """F without rank-one members covered by a full B/C/G2 component."""
    component = frozenset(component)
    fam = family_f(diagram, component)
    ctype = classify_component(diagram, component)
    if ctype.family not in ("B", "C", "G2"):
        return Family("Fcirc", component, fam.members)
    ftilde = family_ftilde(diagram, component).members
    excluded = set()
    for psi in fam.members:
        if len(psi) != 1 or psi == component:
            continue
        if not any(psi < mid < component for mid in ftilde):
            excluded.add(psi)
    return Family("Fcirc", component, fam.members - frozenset(excluded))


def _connected_k_subsets(ctx) -> list[frozenset]:
    out = []
    verts = ctx.vertices
    for r in range(1, len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            sub = frozenset(combo)
            if len(ctx.comps(sub)) == 1:
                out.append(sub)
    return out


def b_members(index: TwoLevelIndex, delta) -> frozenset[frozenset[str]]:
    """All boundary types: kappa(epsilon(theta)) over nonempty connected
    delta-connected theta in the real restricted-root graph."""
    return _b_members(index, frozenset(delta))


@lru_cache(maxsize=8192)
def _b_members(index: TwoLevelIndex, delta: frozenset) -> frozenset[frozenset[str]]:
    rdelta = k_delta(index, Level.R, delta)
    rctx = k_context(index, Level.R)
    cctx = diagram_context(index.diagram)
    out = set()
    for theta in _connected_k_subsets(rctx):
        if not theta & rdelta:  # connected theta is delta-connected iff it meets
            continue
        member = kappa(cctx, epsilon(index, Level.R, theta), delta)
        if member:
            out.add(member)
    return frozenset(out)


def family_b(index: TwoLevelIndex, delta) -> tuple[Family, ...]:
    """Boundary-type family split by real simple factor (component pair)."""
    members = b_members(index, delta)
    return tuple(
        Family("B", pair, frozenset(psi for psi in members if psi <= pair))
        for pair in component_pairs(index))


def family_bstar(index: TwoLevelIndex, delta) -> tuple[Family, ...]:
    return tuple(
        _drop_small_non_components(index.diagram, fam, "Bstar")
        for fam in family_b(index, delta))


def hasse(family: Family, diagram: DynkinDiagram) -> HasseDiagram:
    """Inclusion order on the family members reduced to cover relations."""
    nodes = family.sorted_members(diagram)
    covers = []
    for psi in nodes:
        for prime in nodes:
            if psi < prime and not any(psi < mid < prime for mid in nodes):
                covers.append((psi, prime))
    return HasseDiagram(nodes, tuple(covers))

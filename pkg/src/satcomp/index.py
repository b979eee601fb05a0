"""Two-level (rational/real) indices over a common complex diagram.

A `TwoLevelIndex` packages the diagram, the real- and rational-anisotropic
node sets, the conjugation permutation `cstar`, and generators for the image
of the rational Galois action.  "Galois invariant" always means invariant
under the finite closure of those generators together with `cstar`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .diagram import (
    DynkinDiagram,
    NodeMap,
    NotADynkinDiagram,
    classify_all,
    components,
    is_diagram_automorphism,
    opposition_involution,
)

CLOSURE_CAP = 10 ** 6


class ClosureCapExceeded(Exception):
    """The generated permutation group exceeds the configured cap."""


class InvalidIndexError(Exception):
    """Raised by consumers that require a valid index."""

    def __init__(self, diagnostics):
        self.diagnostics = tuple(diagnostics)
        lines = "; ".join(d.message for d in self.diagnostics)
        super().__init__(f"invalid index: {lines}")


class Level(Enum):
    Q = "Q"
    R = "R"
    C = "C"


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning" | "info"
    code: str
    message: str


@dataclass(frozen=True)
class KRoot:
    """One restricted simple root at a level: a Galois orbit of diagram nodes."""

    level: Level
    fiber: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "fiber", frozenset(self.fiber))


@dataclass(frozen=True)
class TwoLevelIndex:
    diagram: DynkinDiagram
    aniso_r: frozenset[str]
    aniso_q: frozenset[str]
    cstar: NodeMap
    galois_gens: tuple[NodeMap, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "aniso_r", frozenset(self.aniso_r))
        object.__setattr__(self, "aniso_q", frozenset(self.aniso_q))
        object.__setattr__(self, "galois_gens", tuple(self.galois_gens))

    def anisotropic(self, level: Level) -> frozenset[str]:
        if level is Level.Q:
            return self.aniso_q
        if level is Level.R:
            return self.aniso_r
        return frozenset()


@dataclass(frozen=True)
class GaloisClosure:
    """The finite permutation group generated by the Galois data and cstar."""

    elements: tuple[NodeMap, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, nm):
        return nm in set(self.elements)

    def orbit(self, node: str) -> frozenset[str]:
        return frozenset(g(node) for g in self.elements)

    def orbits(self, nodes) -> tuple[frozenset[str], ...]:
        seen: set[str] = set()
        out = []
        for n in nodes:
            if n in seen:
                continue
            orb = self.orbit(n)
            seen |= orb
            out.append(orb)
        return tuple(out)

    def is_invariant(self, subset) -> bool:
        subset = frozenset(subset)
        return all(g.image(subset) == subset for g in self.elements)


@lru_cache(maxsize=4096)
def galois_closure(index: TwoLevelIndex, cap: int = CLOSURE_CAP) -> GaloisClosure:
    """Close the supplied generators plus cstar under composition."""
    gens = list(index.galois_gens) + [index.cstar]
    ident = NodeMap.identity(index.diagram.nodes)
    elems = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for g in frontier:
            for h in gens:
                p = h.compose(g)
                if p not in elems:
                    if len(elems) >= cap:
                        raise ClosureCapExceeded(
                            f"Galois closure exceeds cap of {cap} elements")
                    elems.add(p)
                    fresh.append(p)
        frontier = fresh
    return GaloisClosure(tuple(sorted(elems, key=lambda m: m.pairs)))


def level_group(index: TwoLevelIndex, level: Level) -> tuple[NodeMap, ...]:
    if level is Level.C:
        return (NodeMap.identity(index.diagram.nodes),)
    if level is Level.R:
        ident = NodeMap.identity(index.diagram.nodes)
        return (ident,) if index.cstar.is_identity() else (ident, index.cstar)
    return galois_closure(index).elements


@lru_cache(maxsize=8192)
def restriction_fibers(index: TwoLevelIndex, level: Level) -> tuple[KRoot, ...]:
    """Orbits of the level's group on the non-anisotropic nodes, ordered by
    their earliest member."""
    group = level_group(index, level)
    dropped = index.anisotropic(level)
    seen: set[str] = set()
    fibers = []
    for n in index.diagram.nodes:
        if n in seen or n in dropped:
            continue
        orb = frozenset(g(n) for g in group)
        seen |= orb
        fibers.append(KRoot(level, orb))
    return tuple(fibers)


def epsilon(index: TwoLevelIndex, level: Level, theta_k) -> frozenset[str]:
    """Union of the given fibers with the level's anisotropic set."""
    known = set(restriction_fibers(index, level))
    out = set(index.anisotropic(level))
    for kr in theta_k:
        if kr not in known:
            raise ValueError(f"foreign restricted root {kr!r} at level {level.value}")
        out |= kr.fiber
    return frozenset(out)


def connected_through(diagram: DynkinDiagram, seed: str, allowed) -> frozenset[str]:
    """Component of `seed` in the subgraph induced on {seed} | allowed."""
    allowed = frozenset(allowed)
    comp = {seed}
    stack = [seed]
    while stack:
        u = stack.pop()
        for v in diagram.neighbors(u):
            if v in allowed and v not in comp:
                comp.add(v)
                stack.append(v)
    return frozenset(comp)


def k_adjacency(index: TwoLevelIndex, level: Level, alpha: KRoot, beta: KRoot) -> bool:
    """Whether two restricted roots are joined: every lift of alpha must reach
    some lift of beta through anisotropic nodes only."""
    if alpha.fiber == beta.fiber:
        return False
    aniso = index.anisotropic(level)
    diagram = index.diagram
    for a in alpha.fiber:
        comp = connected_through(diagram, a, aniso)
        if not any(set(diagram.neighbors(b)) & comp for b in beta.fiber):
            return False
    return True


def k_rank(index: TwoLevelIndex, level: Level) -> int:
    return len(restriction_fibers(index, level))


def rrank_of_component(index: TwoLevelIndex, component) -> int:
    """Real rank contributed by a complex component: cstar-orbits of its
    non-real-anisotropic nodes."""
    live = [n for n in component if n not in index.aniso_r]
    seen: set[str] = set()
    count = 0
    for n in live:
        if n in seen:
            continue
        seen.add(n)
        seen.add(index.cstar(n))
        count += 1
    return count


@lru_cache(maxsize=4096)
def component_pairs(index: TwoLevelIndex) -> tuple[frozenset[str], ...]:
    """Components grouped with their cstar-images: the real simple factors."""
    comps = [frozenset(c) for c in components(index.diagram)]
    out = []
    used: set[frozenset] = set()
    for c in comps:
        if c in used:
            continue
        pair = c | index.cstar.image(c)
        used.add(c)
        for d in comps:
            if d <= pair:
                used.add(d)
        out.append(pair)
    return tuple(out)


def aniso_r_compatible(diagram: DynkinDiagram, cstar: NodeMap, subset) -> bool:
    """Check the real-index constraint: cstar fixes the set and restricts to
    the opposition involution on each of its connected components."""
    subset = frozenset(subset)
    if cstar.image(subset) != subset:
        return False
    sub = diagram.subdiagram(subset)
    iota = opposition_involution(sub)
    for comp in components(sub):
        comp_set = frozenset(comp)
        if cstar.image(comp_set) != comp_set:
            return False
        if not all(cstar(x) == iota(x) for x in comp):
            return False
    return True


def validate(index: TwoLevelIndex) -> list[Diagnostic]:
    """Check all index invariants; an empty list means the index is valid."""
    diags: list[Diagnostic] = []
    err = lambda code, msg: diags.append(Diagnostic("error", code, msg))
    diagram = index.diagram

    try:
        classify_all(diagram)
    except NotADynkinDiagram as exc:
        err("diagram", f"not a Dynkin diagram: {exc}")
        return diags

    node_set = frozenset(diagram.nodes)
    for name, subset in (("aniso_r", index.aniso_r), ("aniso_q", index.aniso_q)):
        stray = subset - node_set
        if stray:
            err("unknown-node", f"{name} references unknown nodes {sorted(stray)}")
    if (index.aniso_r - node_set) or (index.aniso_q - node_set):
        return diags

    if not index.aniso_r <= index.aniso_q:
        extra = diagram.ordered(index.aniso_r - index.aniso_q)
        err("aniso-containment", f"aniso_r ⊄ aniso_q (stray: {list(extra)})")

    maps_ok = True
    if index.cstar.sources() != node_set:
        err("cstar-domain", "cstar is not a permutation of the diagram nodes")
        maps_ok = False
    elif not is_diagram_automorphism(diagram, index.cstar):
        err("cstar-automorphism", "cstar is not a diagram automorphism")
        maps_ok = False
    elif not index.cstar.compose(index.cstar).is_identity():
        err("cstar-involution", "cstar squared is not the identity")

    for i, g in enumerate(index.galois_gens):
        if g.sources() != node_set or not is_diagram_automorphism(diagram, g):
            err("galois-automorphism",
                f"generator #{i + 1} not a diagram automorphism")
            maps_ok = False

    if not maps_ok:
        return diags

    if index.cstar.image(index.aniso_r) != index.aniso_r:
        err("cstar-aniso-r", "cstar does not fix aniso_r setwise")
    for i, g in enumerate(list(index.galois_gens) + [index.cstar]):
        if g.image(index.aniso_q) != index.aniso_q:
            err("galois-aniso-q",
                f"Galois element #{i + 1} does not preserve aniso_q")

    try:
        galois_closure(index)
    except ClosureCapExceeded as exc:
        err("closure-cap", str(exc))

    if index.cstar.image(index.aniso_r) == index.aniso_r:
        if not aniso_r_compatible(diagram, index.cstar, index.aniso_r):
            err("aniso-r-involution",
                "cstar does not act as the opposition involution on every "
                "component of aniso_r")
    return diags


def require_valid(index: TwoLevelIndex) -> None:
    diags = [d for d in validate(index) if d.severity == "error"]
    if diags:
        raise InvalidIndexError(diags)


def fiber_sort_key(diagram: DynkinDiagram, kr: KRoot):
    return tuple(sorted(diagram.position(n) for n in kr.fiber))


def sorted_fibers(diagram: DynkinDiagram, fibers) -> tuple[KRoot, ...]:
    return tuple(sorted(fibers, key=lambda kr: fiber_sort_key(diagram, kr)))


def all_subsets(items) -> itertools.chain:
    items = tuple(items)
    return itertools.chain.from_iterable(
        itertools.combinations(items, r) for r in range(len(items) + 1))

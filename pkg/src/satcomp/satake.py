"""Compactification data and the kappa/omega/zeta calculus.

The operators act in a *context*: either the complex diagram itself or the
graph of restricted roots at a level.  `delta` is always the delta-set seen
by that context (the plain node set at level C, the restricted delta-set at
levels Q/R).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .diagram import DynkinDiagram, solve_in_root_basis
from .index import (
    KRoot,
    Level,
    TwoLevelIndex,
    all_subsets,
    connected_through,
    epsilon,
    fiber_sort_key,
    k_adjacency,
    level_group,
    restriction_fibers,
)


class DifferenceNotInRootLattice(Exception):
    """A weight difference has non-integral simple-root coordinates."""


@dataclass(frozen=True)
class DominantWeight:
    """Nonnegative coordinates in the fundamental-weight basis."""

    coords: tuple[tuple[str, int], ...]

    def __post_init__(self):
        coords = tuple(sorted((n, int(c)) for n, c in self.coords if c != 0))
        if any(c < 0 for _, c in coords):
            raise ValueError("dominant weight needs nonnegative coordinates")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "_map", dict(coords))

    @classmethod
    def of(cls, mapping) -> DominantWeight:
        return cls(tuple(mapping.items()))

    def __getitem__(self, node: str) -> int:
        return self._map.get(node, 0)

    def support(self) -> frozenset[str]:
        return frozenset(self._map)


def delta_from_weight(weight: DominantWeight) -> frozenset[str]:
    return weight.support()


@dataclass(frozen=True)
class RootContext:
    """A vertex set with symmetric adjacency, in a fixed canonical order."""

    vertices: tuple
    adjacency: frozenset

    def __post_init__(self):
        nbrs = {v: set() for v in self.vertices}
        for pair in self.adjacency:
            a, b = tuple(pair)
            nbrs[a].add(b)
            nbrs[b].add(a)
        object.__setattr__(self, "_nbrs", {v: frozenset(s) for v, s in nbrs.items()})
        object.__setattr__(self, "_order", {v: i for i, v in enumerate(self.vertices)})

    def adjacent(self, u, v) -> bool:
        return v in self._nbrs[u]

    def neighbors(self, v) -> frozenset:
        return self._nbrs[v]

    def ordered(self, subset) -> tuple:
        return tuple(sorted(subset, key=self._order.__getitem__))

    def comps(self, subset) -> tuple[frozenset, ...]:
        subset = frozenset(subset)
        seen = set()
        out = []
        for start in self.ordered(subset):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self._nbrs[u]:
                    if w in subset and w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(frozenset(comp))
        return tuple(out)


def diagram_context(diagram: DynkinDiagram) -> RootContext:
    return RootContext(
        diagram.nodes,
        frozenset(frozenset((e.u, e.v)) for e in diagram.edges))


@lru_cache(maxsize=8192)
def k_context(index: TwoLevelIndex, level: Level) -> RootContext:
    fibers = restriction_fibers(index, level)
    pairs = frozenset(
        frozenset((a, b))
        for a, b in itertools.combinations(fibers, 2)
        if k_adjacency(index, level, a, b))
    return RootContext(fibers, pairs)


def is_delta_connected(context: RootContext, subset, delta) -> bool:
    """Every connected component of the subset meets delta (vacuous for {})."""
    delta = frozenset(delta)
    return all(comp & delta for comp in context.comps(subset))


def kappa(context: RootContext, theta, delta) -> frozenset:
    """Largest delta-connected subset: the components of theta meeting delta."""
    delta = frozenset(delta)
    out = set()
    for comp in context.comps(theta):
        if comp & delta:
            out |= comp
    return frozenset(out)


def zeta(context: RootContext, theta, delta) -> frozenset:
    """Vertices outside delta and outside kappa(theta) with no edge into it."""
    kap = kappa(context, theta, delta)
    delta = frozenset(delta)
    return frozenset(
        v for v in context.vertices
        if v not in delta and v not in kap and not (context.neighbors(v) & kap))


def omega(context: RootContext, theta, delta) -> frozenset:
    """Largest subset with the same kappa; computed as kappa + zeta."""
    return kappa(context, theta, delta) | zeta(context, theta, delta)


def k_delta(index: TwoLevelIndex, level: Level, delta) -> frozenset[KRoot]:
    """Restricted delta-set: fibers with a lift joined through anisotropic
    nodes to an element of delta."""
    delta = frozenset(delta)
    aniso = index.anisotropic(level)
    out = []
    for fiber in restriction_fibers(index, level):
        for x in fiber.fiber:
            if connected_through(index.diagram, x, aniso) & delta:
                out.append(fiber)
                break
    return frozenset(out)


@dataclass(frozen=True)
class BoundaryComponent:
    """Combinatorial shadow of one standard real boundary component."""

    theta: frozenset[KRoot]
    kappa_r: frozenset[KRoot]
    hermitian_c: frozenset[str]     # simple complex roots of the acting group
    centralizer_c: frozenset[str]   # simple complex roots of the centralizer
    normalizer_type: frozenset[str]


@dataclass(frozen=True)
class BoundaryPoset:
    components: tuple[BoundaryComponent, ...]
    relations: tuple[tuple[int, int], ...]  # (i, j): components[i] < components[j]

    def covers(self) -> tuple[tuple[int, int], ...]:
        rel = set(self.relations)
        return tuple(
            (i, j) for (i, j) in self.relations
            if not any((i, k) in rel and (k, j) in rel
                       for k in range(len(self.components))))


def boundary_components(index: TwoLevelIndex, delta) -> BoundaryPoset:
    """Enumerate boundary components over kappa-closed subsets of the real
    restricted roots (every component of K meets the restricted delta-set)."""
    delta = frozenset(delta)
    rdelta = k_delta(index, Level.R, delta)
    rctx = k_context(index, Level.R)
    cctx = diagram_context(index.diagram)
    diagram = index.diagram

    comps = []
    for combo in all_subsets(rctx.vertices):
        K = frozenset(combo)
        if not is_delta_connected(rctx, K, rdelta):
            continue
        eps = epsilon(index, Level.R, K)
        herm = kappa(cctx, eps, delta)
        cent = zeta(cctx, eps, delta)
        om_r = omega(rctx, K, rdelta)
        comps.append(BoundaryComponent(
            theta=K,
            kappa_r=K,
            hermitian_c=herm,
            centralizer_c=cent,
            normalizer_type=epsilon(index, Level.R, om_r)))

    def theta_key(bc):
        return tuple(sorted(fiber_sort_key(diagram, kr) for kr in bc.theta))

    comps.sort(key=theta_key)
    relations = tuple(
        (i, j)
        for i, a in enumerate(comps)
        for j, b in enumerate(comps)
        if i != j and a.kappa_r < b.kappa_r)
    return BoundaryPoset(tuple(comps), relations)


def condition_R(diagram: DynkinDiagram, chi0: DominantWeight,
                others) -> bool:
    """Direct-sum admissibility: every difference chi0 - chi' must be a
    nonnegative integral root combination with delta(chi0)-connected support."""
    delta0 = chi0.support()
    ctx = diagram_context(diagram)
    for chi in others:
        diff = {n: chi0[n] - chi[n] for n in diagram.nodes}
        coords = solve_in_root_basis(diagram, diff)
        if any(c.denominator != 1 for c in coords.values()):
            bad = {n: str(c) for n, c in coords.items() if c.denominator != 1}
            raise DifferenceNotInRootLattice(
                f"difference is not in the root lattice: {bad}")
        if any(c < 0 for c in coords.values()):
            return False
        support = frozenset(n for n, c in coords.items() if c != 0)
        if not is_delta_connected(ctx, support, delta0):
            return False
    return True


def original_construction_delta(index: TwoLevelIndex, delta_mu) -> frozenset[str]:
    """Delta-set of the induced spherical datum: the full preimage of the
    real restricted delta-set of delta_mu."""
    rdelta = k_delta(index, Level.R, frozenset(delta_mu))
    out: set[str] = set()
    for kr in rdelta:
        out |= kr.fiber
    return frozenset(out)


def is_projectively_rational(index: TwoLevelIndex, weight: DominantWeight,
                             level: Level = Level.Q) -> bool:
    """Weight coordinates invariant under the level's Galois action."""
    return all(weight[g(n)] == weight[n]
               for g in level_group(index, level)
               for n in index.diagram.nodes)


def is_strongly_rational(index: TwoLevelIndex, level: Level,
                         weight: DominantWeight) -> bool:
    return (is_projectively_rational(index, weight, level)
            and not weight.support() & index.anisotropic(level))


def spherical_necessary(index: TwoLevelIndex, delta) -> bool:
    """Necessary shape of a spherical delta-set: conjugation-invariant and
    disjoint from the real-anisotropic roots."""
    delta = frozenset(delta)
    return index.cstar.image(delta) == delta and not delta & index.aniso_r

"""Geometric-rationality verdicts.

The two Galois-invariance conditions (on omega and kappa of the rational
anisotropic set) are the verdict of record; the classification theorems are
evaluated as advisory routes and every applicable route is cross-checked
against the direct test.  A disagreement raises `CrossCheckFailure` and
means a bug, never an expected outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diagram import (
    ComponentType,
    DynkinDiagram,
    NodeMap,
    classify_component,
    components,
    opposition_involution,
)
from .index import (
    Diagnostic,
    KRoot,
    Level,
    TwoLevelIndex,
    component_pairs,
    galois_closure,
    k_rank,
    require_valid,
    rrank_of_component,
    validate,
)
from .satake import (
    BoundaryPoset,
    boundary_components,
    diagram_context,
    k_delta,
    kappa,
    omega,
    original_construction_delta,
    spherical_necessary,
    zeta,
)
from .families import b_members, family_b, family_bstar, family_f, family_fcirc, family_ftilde


class CrossCheckFailure(Exception):
    """An applicable theorem route disagreed with the direct criterion."""


ROUTE_CASSELMAN = "CasselmanDirect"
ROUTE_DELTA_INVARIANT = "DeltaGaloisInvariant"
ROUTE_ORIGINAL = "OriginalConstruction"
ROUTE_EQUAL_RANK = "EqualRankMain"
ROUTE_EXC_Q2 = "ExceptionalQRank2"
ROUTE_EXC_Q1 = "ExceptionalQRank1"
ROUTE_NA = "NotApplicable"

THEOREM_ROUTES = (ROUTE_DELTA_INVARIANT, ROUTE_ORIGINAL, ROUTE_EQUAL_RANK,
                  ROUTE_EXC_Q2, ROUTE_EXC_Q1)


@dataclass(frozen=True)
class Witness:
    condition: int          # 1 = omega invariance, 2 = kappa containment
    element: NodeMap
    image: frozenset[str]


@dataclass(frozen=True)
class Verdict:
    geometrically_rational: bool | None
    route: str
    witness: Witness | None = None
    cross_check: bool | None = None


@dataclass(frozen=True)
class CasselmanEvaluation:
    kappa0: frozenset[str]
    omega0: frozenset[str]
    zeta0: frozenset[str]
    cond1: bool
    cond2: bool
    witness: Witness | None

    @property
    def rational(self) -> bool:
        return self.cond1 and self.cond2

    def verdict(self) -> Verdict:
        return Verdict(self.rational, ROUTE_CASSELMAN, self.witness)


def casselman_evaluation(index: TwoLevelIndex, delta) -> CasselmanEvaluation:
    delta = frozenset(delta)
    ctx = diagram_context(index.diagram)
    kap = kappa(ctx, index.aniso_q, delta)
    zet = zeta(ctx, index.aniso_q, delta)
    om = kap | zet
    closure = galois_closure(index)
    witness = None
    cond1 = True
    for g in closure:
        if g.image(om) != om:
            cond1 = False
            witness = Witness(1, g, g.image(om))
            break
    cond2 = True
    allowed = kap | index.aniso_r
    for g in closure:
        if not g.image(kap) <= allowed:
            cond2 = False
            if witness is None:
                witness = Witness(2, g, g.image(kap))
            break
    return CasselmanEvaluation(kap, om, zet, cond1, cond2, witness)


def casselman(index: TwoLevelIndex, delta) -> Verdict:
    """The direct two-condition test; geometric rationality of record."""
    return casselman_evaluation(index, delta).verdict()


def delta_galois_invariant(index: TwoLevelIndex, delta) -> bool:
    return galois_closure(index).is_invariant(frozenset(delta))


def is_equal_rank_group(index: TwoLevelIndex) -> bool:
    """Conjugation equals the opposition involution of the whole diagram."""
    return index.cstar == opposition_involution(index.diagram)


def is_real_equal_rank(index: TwoLevelIndex, delta) -> bool:
    """The group and every boundary type are equal-rank: cstar restricts to
    the opposition involution of each member of the boundary family."""
    return _is_real_equal_rank(index, frozenset(delta))


@lru_cache(maxsize=8192)
def _is_real_equal_rank(index: TwoLevelIndex, delta: frozenset) -> bool:
    if not is_equal_rank_group(index):
        return False
    diagram = index.diagram
    for psi in b_members(index, delta):
        if index.cstar.image(psi) != psi:
            return False
        sub_iota = opposition_involution(diagram.subdiagram(psi))
        if not all(index.cstar(x) == sub_iota(x) for x in psi):
            return False
    return True


def almost_q_simple(index: TwoLevelIndex) -> bool:
    """Galois closure acts transitively on the diagram components."""
    comps = [frozenset(c) for c in components(index.diagram)]
    if len(comps) <= 1:
        return True
    closure = galois_closure(index)
    first = comps[0]
    reached = {frozenset(g.image(first)) for g in closure}
    return all(c in reached for c in comps)


def exceptional_factors(index: TwoLevelIndex, delta) -> tuple[frozenset[str], ...]:
    """Real factors of real rank two and type B/C/G2 whose compactification
    has a rank-one boundary component."""
    return _exceptional_factors(index, frozenset(delta))


@lru_cache(maxsize=8192)
def _exceptional_factors(index: TwoLevelIndex, delta: frozenset) -> tuple[frozenset[str], ...]:
    out = []
    for fam in family_b(index, delta):
        pair = fam.component
        comp = next(frozenset(c) for c in components(index.diagram)
                    if frozenset(c) <= pair)
        ctype = classify_component(index.diagram, comp)
        if ctype.family not in ("B", "C", "G2"):
            continue
        if rrank_of_component(index, comp) != 2:
            continue
        if any(len(psi) == 1 for psi in fam.members):
            out.append(pair)
    return tuple(out)


def nontrivial_on_noncompact(index: TwoLevelIndex, delta) -> bool:
    """delta meets every real simple factor that is not anisotropic."""
    delta = frozenset(delta)
    return all(
        delta & pair
        for pair in component_pairs(index)
        if rrank_of_component(index, pair) >= 1)


def satake_admissible(index: TwoLevelIndex, delta) -> bool:
    """Standing hypotheses of the compactification setup, in combinatorial
    form: spherical necessary conditions plus nontriviality on every
    noncompact factor."""
    return (spherical_necessary(index, delta)
            and nontrivial_on_noncompact(index, delta))


def _scalars_restriction_bcg(index: TwoLevelIndex) -> bool:
    types = {classify_component(index.diagram, c)
             for c in components(index.diagram)}
    if len(types) != 1:
        return False
    return next(iter(types)).family in ("B", "C", "G2")


def main_theorem_verdict(index: TwoLevelIndex, delta) -> Verdict:
    """Equal-rank route: applicable to admissible, almost-simple, real
    equal-rank data without exceptional factors, and then always rational."""
    delta = frozenset(delta)
    applicable = (satake_admissible(index, delta)
                  and almost_q_simple(index)
                  and is_real_equal_rank(index, delta)
                  and not exceptional_factors(index, delta))
    if not applicable:
        return Verdict(None, ROUTE_NA)
    agreement = casselman_evaluation(index, delta).rational is True
    return Verdict(True, ROUTE_EQUAL_RANK, cross_check=agreement)


def special_cases_verdict(index: TwoLevelIndex, delta) -> Verdict:
    """Rank-one/rank-two exceptional route for B/C/G2 scalar restrictions
    carrying a rank-one boundary factor."""
    delta = frozenset(delta)
    applicable = (satake_admissible(index, delta)
                  and almost_q_simple(index)
                  and _scalars_restriction_bcg(index)
                  and is_real_equal_rank(index, delta)
                  and bool(exceptional_factors(index, delta)))
    if not applicable:
        return Verdict(None, ROUTE_NA)
    qrank = k_rank(index, Level.Q)
    if qrank == 2:
        rational = delta_galois_invariant(index, delta)
        route = ROUTE_EXC_Q2
    elif qrank == 1:
        meet = delta & index.aniso_q
        rational = not meet or all(
            meet & frozenset(c)
            for c in components(index.diagram)
            if rrank_of_component(index, c) >= 2)
        route = ROUTE_EXC_Q1
    else:
        return Verdict(None, ROUTE_NA)
    agreement = casselman_evaluation(index, delta).rational == rational
    return Verdict(rational, route, cross_check=agreement)


@dataclass(frozen=True)
class RouteResult:
    route: str
    applicable: bool
    rational: bool | None
    cross_check: bool | None


@dataclass(frozen=True)
class ComponentSummary:
    nodes: tuple[str, ...]
    ctype: ComponentType
    rrank: int


@dataclass(frozen=True)
class Report:
    name: str
    valid: bool
    diagnostics: tuple[Diagnostic, ...]
    q_rank: int
    component_summaries: tuple[ComponentSummary, ...]
    delta: frozenset[str]
    r_delta: tuple[KRoot, ...]
    q_delta: tuple[KRoot, ...]
    casselman: CasselmanEvaluation
    routes: tuple[RouteResult, ...]
    route: str          # first applicable theorem route, else CasselmanDirect
    rational: bool
    equal_rank_group: bool
    equal_rank_compactification: bool
    exceptional: tuple[frozenset[str], ...]
    boundary: BoundaryPoset
    families: tuple | None = None


def _route_results(index, delta, delta_mu, cass) -> tuple[RouteResult, ...]:
    results = []

    inv = delta_galois_invariant(index, delta)
    results.append(RouteResult(
        ROUTE_DELTA_INVARIANT, inv, True if inv else None,
        (cass.rational is True) if inv else None))

    if delta_mu is not None:
        oc_applicable = (delta_galois_invariant(index, delta_mu)
                         and frozenset(delta) == original_construction_delta(index, delta_mu))
    else:
        oc_applicable = False
    results.append(RouteResult(
        ROUTE_ORIGINAL, oc_applicable, True if oc_applicable else None,
        (cass.rational is True) if oc_applicable else None))

    main = main_theorem_verdict(index, delta)
    results.append(RouteResult(
        ROUTE_EQUAL_RANK, main.route != ROUTE_NA,
        main.geometrically_rational, main.cross_check))

    special = special_cases_verdict(index, delta)
    for route in (ROUTE_EXC_Q2, ROUTE_EXC_Q1):
        hit = special.route == route
        results.append(RouteResult(
            route, hit, special.geometrically_rational if hit else None,
            special.cross_check if hit else None))

    results.append(RouteResult(ROUTE_CASSELMAN, True, cass.rational, None))
    return tuple(results)


def _remarks(index, delta, routes, summaries) -> list[Diagnostic]:
    notes = []
    if not spherical_necessary(index, delta):
        notes.append(Diagnostic(
            "info", "delta-not-spherical",
            "delta is not conjugation-invariant or meets the real-anisotropic "
            "set; theorem routes are skipped"))
    elif not nontrivial_on_noncompact(index, delta):
        notes.append(Diagnostic(
            "info", "delta-misses-factor",
            "delta misses a noncompact real factor; theorem routes are skipped"))
    by_route = {r.route: r for r in routes}
    if by_route[ROUTE_EXC_Q2].applicable:
        ranks = sorted(s.rrank for s in summaries)
        notes.append(Diagnostic(
            "info", "qrank2-remark",
            f"rank-two exceptional case: geometric rationality forces every "
            f"real factor to have real rank 2 (observed ranks {ranks})"))
    if by_route[ROUTE_EXC_Q1].applicable:
        big = [list(s.nodes) for s in summaries if s.rrank > 2]
        if big:
            notes.append(Diagnostic(
                "info", "qrank1-remark",
                f"components of real rank > 2 are met automatically; the "
                f"rank-one test reduces to real-rank-2 components ({big})"))
    if is_real_equal_rank(index, delta):
        for s in summaries:
            if s.ctype.family == "F4" and s.rrank not in (0, 1):
                notes.append(Diagnostic(
                    "warning", "f4-rank",
                    f"real equal-rank input has an F4 component {list(s.nodes)} "
                    f"of real rank {s.rrank}; only ranks 0 and 1 are realizable"))
    return notes


def classify(index: TwoLevelIndex, delta, delta_mu=None, name: str = "",
             include_families: bool = False) -> Report:
    """Run every verdict route and assemble the full report.

    Raises InvalidIndexError for invalid indices and CrossCheckFailure if an
    applicable theorem route contradicts the direct criterion.
    """
    require_valid(index)
    delta = frozenset(delta)
    if delta_mu is not None:
        delta_mu = frozenset(delta_mu)

    cass = casselman_evaluation(index, delta)
    routes = _route_results(index, delta, delta_mu, cass)
    for r in routes:
        if r.applicable and r.cross_check is False:
            raise CrossCheckFailure(
                f"route {r.route} says rational={r.rational} but the direct "
                f"criterion says {cass.rational}")

    summaries = tuple(
        ComponentSummary(comp, classify_component(index.diagram, comp),
                         rrank_of_component(index, comp))
        for comp in components(index.diagram))

    diags = list(validate(index))  # warnings only; errors raised above
    diags.extend(_remarks(index, delta, routes, summaries))

    route_of_record = next(
        (r.route for r in routes if r.applicable and r.route != ROUTE_CASSELMAN),
        ROUTE_CASSELMAN)

    fams = None
    if include_families:
        fams = []
        for comp in components(index.diagram):
            comp_set = frozenset(comp)
            fams.append((family_ftilde(index.diagram, comp_set),
                         family_f(index.diagram, comp_set),
                         family_fcirc(index.diagram, comp_set)))
        fams = tuple(fams) + tuple(family_b(index, delta)) \
            + tuple(family_bstar(index, delta))

    return Report(
        name=name,
        valid=True,
        diagnostics=tuple(diags),
        q_rank=k_rank(index, Level.Q),
        component_summaries=summaries,
        delta=delta,
        r_delta=tuple(sorted(k_delta(index, Level.R, delta),
                             key=lambda kr: _fiber_key(index.diagram, kr))),
        q_delta=tuple(sorted(k_delta(index, Level.Q, delta),
                             key=lambda kr: _fiber_key(index.diagram, kr))),
        casselman=cass,
        routes=routes,
        route=route_of_record,
        rational=cass.rational,
        equal_rank_group=is_equal_rank_group(index),
        equal_rank_compactification=is_real_equal_rank(index, delta),
        exceptional=exceptional_factors(index, delta),
        boundary=boundary_components(index, delta),
        families=fams)


def _fiber_key(diagram: DynkinDiagram, kr: KRoot):
    return tuple(sorted(diagram.position(n) for n in kr.fiber))

"""Random valid indices for randomized property suites.

All sampling goes through a caller-supplied `random.Random`, so suites are
reproducible from a seed.  Generation is constructive where cheap and
rejection-based where the constraint is awkward (anisotropic sets must be
compatible with the chosen conjugation).
"""

from __future__ import annotations

import itertools
import random
import string

from .diagram import (
    DynkinDiagram,
    NodeMap,
    classify_component,
    components,
    disjoint_union,
    opposition_involution,
    standard_diagram,
)
from .index import (
    TwoLevelIndex,
    all_subsets,
    aniso_r_compatible,
    component_pairs,
    galois_closure,
    rrank_of_component,
    validate,
)

_COMPONENT_POOL = (
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5),
    ("B", 2), ("B", 3), ("B", 4),
    ("C", 3), ("C", 4),
    ("D", 4), ("D", 5),
    ("F4", 4), ("G2", 2), ("E6", 6), ("E7", 7),
)


def _build_copies(specs) -> DynkinDiagram:
    parts = []
    for letter, (family, rank) in zip(string.ascii_lowercase, specs):
        parts.append(standard_diagram(family, rank, prefix=letter))
    return disjoint_union(*parts)


def _component_symmetries(diagram, comp) -> list[dict]:
    """Automorphisms of one component as node dicts (identity included)."""
    from .diagram import _layout
    ctype, pos = _layout(diagram, frozenset(comp))
    ident = {n: n for n in pos}
    out = [ident]
    if ctype.family == "A" and ctype.rank >= 2:
        out.append({pos[i]: pos[len(pos) - 1 - i] for i in range(len(pos))})
    elif ctype.family == "D" and ctype.rank == 4:
        outer = (pos[0], pos[2], pos[3])
        for perm in itertools.permutations(outer):
            mapping = dict(ident)
            mapping.update(dict(zip(outer, perm)))
            if mapping != ident:
                out.append(mapping)
    elif ctype.family == "D":
        swap = dict(ident)
        swap[pos[-2]], swap[pos[-1]] = pos[-1], pos[-2]
        out.append(swap)
    elif ctype.family == "E6":
        flip = dict(ident)
        flip[pos[0]], flip[pos[5]] = pos[5], pos[0]
        flip[pos[2]], flip[pos[4]] = pos[4], pos[2]
        out.append(flip)
    return out


def random_automorphism(rng: random.Random, diagram: DynkinDiagram) -> NodeMap:
    """Random diagram automorphism: permute isomorphic components, then apply
    a random symmetry inside each target component."""
    from .diagram import _layout
    comps = list(components(diagram))
    blocks: dict = {}
    for comp in comps:
        ctype = classify_component(diagram, comp)
        blocks.setdefault(ctype, []).append(comp)
    mapping: dict[str, str] = {}
    for block in blocks.values():
        order = list(range(len(block)))
        rng.shuffle(order)
        for i, comp in enumerate(block):
            target = block[order[i]]
            _, pos_src = _layout(diagram, frozenset(comp))
            _, pos_tgt = _layout(diagram, frozenset(target))
            sym = rng.choice(_component_symmetries(diagram, target))
            for s, t in zip(pos_src, pos_tgt):
                mapping[s] = sym[t]
    return NodeMap.from_dict(mapping)


def _random_involution(rng, diagram) -> NodeMap:
    if rng.random() < 0.4:
        return NodeMap.identity(diagram.nodes)
    for _ in range(40):
        g = random_automorphism(rng, diagram)
        if g.compose(g).is_identity():
            return g
    return NodeMap.identity(diagram.nodes)


def _aniso_r_choices(diagram, cstar) -> list[frozenset]:
    return [frozenset(s) for s in all_subsets(diagram.nodes)
            if aniso_r_compatible(diagram, cstar, frozenset(s))]


def _pick_aniso_r(rng, diagram, cstar) -> frozenset:
    choices = _aniso_r_choices(diagram, cstar)
    weights = [2 ** (-len(s)) if s else 4.0 for s in choices]
    return rng.choices(choices, weights=weights, k=1)[0]


def _finish_index(rng, diagram, cstar, aniso_r, gens) -> TwoLevelIndex:
    probe = TwoLevelIndex(diagram, aniso_r, aniso_r, cstar, gens)
    closure = galois_closure(probe)
    aniso_q = set(aniso_r)
    for orbit in closure.orbits(diagram.nodes):
        if orbit & aniso_r:
            aniso_q |= orbit
        elif rng.random() < 0.3:
            aniso_q |= orbit
    index = TwoLevelIndex(diagram, aniso_r, frozenset(aniso_q), cstar, gens)
    problems = validate(index)
    assert not problems, problems
    return index


def random_valid_index(rng: random.Random, max_rank: int = 8) -> TwoLevelIndex:
    """A valid index on a random diagram of total rank <= max_rank."""
    specs = []
    total = 0
    while True:
        fits = [(f, r) for f, r in _COMPONENT_POOL if total + r <= max_rank]
        if not fits:
            break
        family, rank = rng.choice(fits)
        copies = rng.choice([1, 1, 1, 2, 2, 3])
        copies = min(copies, (max_rank - total) // rank)
        specs.extend([(family, rank)] * max(copies, 1))
        total += rank * max(copies, 1)
        if rng.random() < 0.55 or total >= max_rank:
            break
    diagram = _build_copies(specs)
    cstar = _random_involution(rng, diagram)
    aniso_r = _pick_aniso_r(rng, diagram, cstar)
    gens = tuple(random_automorphism(rng, diagram)
                 for _ in range(rng.choice([0, 1, 1, 2])))
    return _finish_index(rng, diagram, cstar, aniso_r, gens)


def random_equal_rank_index(rng: random.Random, max_rank: int = 8) -> TwoLevelIndex:
    """A valid index whose conjugation is the opposition involution."""
    while True:
        family, rank = rng.choice(_COMPONENT_POOL)
        copies = rng.choice([1, 2, 2, 3])
        if rank * copies <= max_rank:
            break
    diagram = _build_copies([(family, rank)] * copies)
    cstar = opposition_involution(diagram)
    aniso_r = _pick_aniso_r(rng, diagram, cstar)
    gens = tuple(random_automorphism(rng, diagram)
                 for _ in range(rng.choice([0, 1, 1, 2])))
    return _finish_index(rng, diagram, cstar, aniso_r, gens)


def random_scalars_restriction_index(rng: random.Random) -> TwoLevelIndex:
    """Restriction-of-scalars shape of type B/C/G2: isomorphic rows, a
    transitive cyclic Galois action, column-shaped rational anisotropy."""
    family, rank = rng.choice([("B", 2), ("B", 2), ("B", 3), ("B", 3),
                               ("B", 4), ("C", 3), ("G2", 2)])
    copies = rng.choice([2, 2, 2, 3])
    diagram = _build_copies([(family, rank)] * copies)
    comps = components(diagram)
    cstar = opposition_involution(diagram)  # identity for these families

    from .diagram import _layout
    layouts = [_layout(diagram, frozenset(c))[1] for c in comps]
    cycle_map = {}
    for i, pos in enumerate(layouts):
        nxt = layouts[(i + 1) % copies]
        cycle_map.update(dict(zip(pos, nxt)))
    gens = (NodeMap.from_dict(cycle_map),)

    # per-row anisotropic tails (possibly empty, possibly the whole row)
    aniso_r = set()
    black_cols: set[int] = set()
    for pos in layouts:
        start = rng.choice(range(1, rank + 2))  # rank+1 means no black nodes
        for j in range(start, rank + 1):
            aniso_r.add(pos[j - 1])
            black_cols.add(j)
    free = [j for j in range(1, rank + 1) if j not in black_cols]
    keep_out = rng.choice([1, 1, 2]) if free else 0
    out_cols = set(rng.sample(free, min(keep_out, len(free))))
    aniso_q = {pos[j - 1] for pos in layouts for j in range(1, rank + 1)
               if j not in out_cols}
    index = TwoLevelIndex(diagram, frozenset(aniso_r), frozenset(aniso_q),
                          cstar, gens)
    problems = validate(index)
    assert not problems, problems
    return index


def invariant_deltas(index: TwoLevelIndex):
    """All Galois-invariant delta-sets (unions of closure orbits)."""
    orbits = galois_closure(index).orbits(index.diagram.nodes)
    for combo in all_subsets(orbits):
        yield frozenset().union(*combo) if combo else frozenset()


def random_invariant_delta(rng: random.Random, index: TwoLevelIndex) -> frozenset:
    orbits = galois_closure(index).orbits(index.diagram.nodes)
    picked = [o for o in orbits if rng.random() < 0.5]
    return frozenset().union(*picked) if picked else frozenset()


def admissible_deltas(index: TwoLevelIndex):
    """All delta-sets satisfying the combinatorial standing hypotheses:
    cstar-invariant, disjoint from the real-anisotropic set, and meeting
    every noncompact real factor."""
    live = [n for n in index.diagram.nodes if n not in index.aniso_r]
    orbits = []
    seen: set[str] = set()
    for n in live:
        if n in seen:
            continue
        orb = frozenset({n, index.cstar(n)})
        seen |= orb
        orbits.append(orb)
    noncompact = [pair for pair in component_pairs(index)
                  if rrank_of_component(index, pair) >= 1]
    for combo in all_subsets(orbits):
        delta = frozenset().union(*combo) if combo else frozenset()
        if all(delta & pair for pair in noncompact):
            yield delta

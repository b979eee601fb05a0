"""Independent brute-force oracles for the subset operators.

These deliberately avoid the library's kappa/omega/zeta implementations:
components come from a local union-find-free flood fill and omega is found
by exhaustive enumeration of all subsets.
"""

from __future__ import annotations

import itertools


def brute_components(vertices, adjacent, subset):
    subset = set(subset)
    out = []
    while subset:
        start = next(iter(subset))
        comp = {start}
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for v in list(subset):
                if v not in comp and adjacent(u, v):
                    comp.add(v)
                    frontier.append(v)
        subset -= comp
        out.append(frozenset(comp))
    return out


def brute_kappa(vertices, adjacent, theta, delta):
    delta = set(delta)
    keep = set()
    for comp in brute_components(vertices, adjacent, theta):
        if comp & delta:
            keep |= comp
    return frozenset(keep)


def omega_table(vertices, adjacent, delta):
    """For a fixed delta: kappa value of every subset, and for each kappa
    value the unique maximal subset attaining it (with a uniqueness flag)."""
    vertices = tuple(vertices)
    kappa_of = {}
    by_target: dict = {}
    for r in range(len(vertices) + 1):
        for combo in itertools.combinations(vertices, r):
            cand = frozenset(combo)
            kap = brute_kappa(vertices, adjacent, cand, delta)
            kappa_of[cand] = kap
            by_target.setdefault(kap, []).append(cand)
    table = {}
    for target, cands in by_target.items():
        union = frozenset().union(*cands)
        unique = brute_kappa(vertices, adjacent, union, delta) == target
        table[target] = (union, unique)
    return kappa_of, table


def brute_omega(vertices, adjacent, theta, delta):
    """The unique maximal superset-with-equal-kappa, by full enumeration.

    Returns (omega, unique) where unique reports that the maximal element
    was unique, i.e. the union of all candidates is itself a candidate.
    """
    vertices = tuple(vertices)
    target = brute_kappa(vertices, adjacent, theta, delta)
    best: set = set()
    for r in range(len(vertices) + 1):
        for combo in itertools.combinations(vertices, r):
            cand = frozenset(combo)
            if brute_kappa(vertices, adjacent, cand, delta) == target:
                best |= cand
    unique = brute_kappa(vertices, adjacent, best, delta) == target
    return frozenset(best), unique

import itertools
import random

import pytest

from conftest import ex1_index, split_b2_pair_index
from oracle import brute_omega, omega_table
from satcomp.diagram import DynkinDiagram, NodeMap, standard_diagram
from satcomp.generate import admissible_deltas, random_valid_index
from satcomp.index import KRoot, Level, TwoLevelIndex, all_subsets
from satcomp.satake import (
    BoundaryPoset,
    DifferenceNotInRootLattice,
    DominantWeight,
    boundary_components,
    condition_R,
    delta_from_weight,
    diagram_context,
    epsilon,
    is_delta_connected,
    k_context,
    k_delta,
    kappa,
    omega,
    original_construction_delta,
    is_projectively_rational,
    is_strongly_rational,
    spherical_necessary,
    zeta,
)


def rfiber(*nodes):
    return KRoot(Level.R, frozenset(nodes))


# -- delta sets ---------------------------------------------------------------

def test_delta_from_weight():
    assert delta_from_weight(DominantWeight.of({})) == frozenset()
    assert delta_from_weight(DominantWeight.of({"a2": 1})) == {"a2"}
    assert delta_from_weight(DominantWeight.of({"a2": 2, "b3": 1})) == {"a2", "b3"}
    with pytest.raises(ValueError):
        DominantWeight.of({"a1": -1})


# -- delta-connectivity and the three operators --------------------------------

def test_is_delta_connected_ex1():
    ctx = diagram_context(ex1_index().diagram)
    delta = {"a2", "b3"}
    assert is_delta_connected(ctx, {"a2", "a3"}, delta)
    assert not is_delta_connected(ctx, {"a1", "a3"}, delta)
    assert is_delta_connected(ctx, set(), delta)


def test_kappa_ex1():
    ctx = diagram_context(ex1_index().diagram)
    delta = {"a2", "b3"}
    assert kappa(ctx, {"a3", "b3"}, delta) == {"b3"}
    assert kappa(ctx, set(), delta) == frozenset()
    assert kappa(ctx, {"a2", "a3"}, delta) == {"a2", "a3"}


def test_omega_zeta_ex1():
    idx = ex1_index()
    ctx = diagram_context(idx.diagram)
    assert omega(ctx, {"a3", "b3"}, {"a2", "b3"}) == {"a1", "a3", "b1", "b3"}
    assert zeta(ctx, {"a3", "b3"}, {"a2", "b3"}) == {"a1", "a3", "b1"}
    assert omega(ctx, {"a3", "b3"}, {"a1", "b3"}) == {"a2", "a3", "b1", "b3"}
    # empty theta: omega is the complement of delta
    for delta in ({"a2", "b3"}, {"a1", "b3"}, set()):
        want = frozenset(idx.diagram.nodes) - frozenset(delta)
        assert omega(ctx, set(), delta) == want
        assert zeta(ctx, set(), delta) == want


def test_operator_laws_small_exhaustive():
    for family, rank in (("A", 3), ("B", 3), ("D", 4), ("G2", 2)):
        d = standard_diagram(family, rank)
        ctx = diagram_context(d)
        nodes = tuple(d.nodes)
        for delta_c in all_subsets(nodes):
            delta = frozenset(delta_c)
            for theta_c in all_subsets(nodes):
                theta = frozenset(theta_c)
                kap = kappa(ctx, theta, delta)
                om = omega(ctx, theta, delta)
                assert kap <= theta <= om
                assert kappa(ctx, om, delta) == kap
                assert omega(ctx, om, delta) == om
                assert zeta(ctx, theta, delta) == om - kap


def test_omega_matches_brute_force_oracle():
    d = standard_diagram("B", 3)
    ctx = diagram_context(d)
    nodes = tuple(d.nodes)
    for delta_c in all_subsets(nodes):
        delta = frozenset(delta_c)
        for theta_c in all_subsets(nodes):
            theta = frozenset(theta_c)
            expected, unique = brute_omega(nodes, ctx.adjacent, theta, delta)
            assert unique
            assert omega(ctx, theta, delta) == expected


# -- restricted delta sets ------------------------------------------------------

def test_k_delta_ex1():
    idx = ex1_index()
    assert k_delta(idx, Level.R, {"a2", "b3"}) == {rfiber("a2"), rfiber("b3")}
    assert k_delta(idx, Level.Q, {"a3"}) == {KRoot(Level.Q, {"a2", "b2"})}
    assert k_delta(idx, Level.R, set()) == frozenset()


# -- boundary components --------------------------------------------------------

def test_boundary_ex1_hermitian_values():
    idx = ex1_index()
    poset = boundary_components(idx, {"a2", "b3"})
    a_vals = [frozenset(), frozenset({"a2", "a3"}), frozenset({"a1", "a2", "a3"})]
    b_vals = [frozenset(), frozenset({"b3"}), frozenset({"b2", "b3"}),
              frozenset({"b1", "b2", "b3"})]
    expected = {a | b for a in a_vals for b in b_vals}
    assert {bc.hermitian_c for bc in poset.components} == expected
    assert len(poset.components) == 12


def test_boundary_empty_delta():
    idx = ex1_index()
    poset = boundary_components(idx, set())
    assert len(poset.components) == 1
    assert poset.components[0].hermitian_c == frozenset()


def test_boundary_split_a2():
    d = standard_diagram("A", 2)
    idx = TwoLevelIndex(d, (), (), NodeMap.identity(d.nodes), ())
    poset = boundary_components(idx, {"a1"})
    assert {bc.hermitian_c for bc in poset.components} == {
        frozenset(), frozenset({"a1"}), frozenset({"a1", "a2"})}


def test_boundary_order_is_kappa_containment():
    idx = ex1_index()
    poset = boundary_components(idx, {"a2", "b3"})
    for i, j in poset.relations:
        assert poset.components[i].kappa_r < poset.components[j].kappa_r


def test_boundary_invariants_spherical():
    # hermitian part both ways + poset isomorphism, on spherical data
    rng = random.Random(23)
    checked = 0
    while checked < 25:
        idx = random_valid_index(rng, max_rank=7)
        deltas = list(itertools.islice(admissible_deltas(idx), 6))
        for delta in deltas:
            assert spherical_necessary(idx, delta)
            poset = boundary_components(idx, delta)
            cctx = diagram_context(idx.diagram)
            seen = {}
            for bc in poset.components:
                eps = epsilon(idx, Level.R, bc.kappa_r)
                other = frozenset().union(*(
                    comp for comp in cctx.comps(eps)
                    if not comp <= idx.aniso_r)) if eps else frozenset()
                assert bc.hermitian_c == other
                assert bc.hermitian_c not in seen  # injective
                seen[bc.hermitian_c] = bc.kappa_r
            for a in poset.components:
                for b in poset.components:
                    assert ((a.kappa_r <= b.kappa_r)
                            == (a.hermitian_c <= b.hermitian_c))
            checked += 1


def test_epsilon_omega_commute_when_spherical():
    rng = random.Random(31)
    checked = 0
    while checked < 30:
        idx = random_valid_index(rng, max_rank=7)
        cctx = diagram_context(idx.diagram)
        rctx = k_context(idx, Level.R)
        for delta in itertools.islice(admissible_deltas(idx), 4):
            rdelta = k_delta(idx, Level.R, delta)
            for combo in all_subsets(rctx.vertices):
                theta = frozenset(combo)
                lhs = epsilon(idx, Level.R, omega(rctx, theta, rdelta))
                rhs = omega(cctx, epsilon(idx, Level.R, theta), delta)
                assert lhs == rhs
            checked += 1


# -- condition (R) ---------------------------------------------------------------

def test_condition_r_reflexive():
    d = standard_diagram("A", 2)
    chi0 = DominantWeight.of({"a1": 1, "a2": 1})
    assert condition_R(d, chi0, [chi0])


def test_condition_r_adjoint_a2():
    d = standard_diagram("A", 2)
    chi0 = DominantWeight.of({"a1": 1, "a2": 1})
    assert condition_R(d, chi0, [DominantWeight.of({})])


def test_condition_r_not_in_root_lattice():
    d = standard_diagram("A", 2)
    with pytest.raises(DifferenceNotInRootLattice):
        condition_R(d, DominantWeight.of({"a1": 1}), [DominantWeight.of({})])


def test_condition_r_not_codominant():
    d = standard_diagram("A", 2)
    chi0 = DominantWeight.of({"a1": 1, "a2": 1})
    bigger = DominantWeight.of({"a1": 2, "a2": 2})
    assert not condition_R(d, chi0, [bigger])


def test_condition_r_vector_rep_b3():
    d = standard_diagram("B", 3)
    chi0 = DominantWeight.of({"a1": 1})
    assert condition_R(d, chi0, [DominantWeight.of({})])


# -- original construction -------------------------------------------------------

def test_original_construction_ex1():
    idx = ex1_index()
    assert original_construction_delta(idx, {"a3"}) == {"a2"}
    assert original_construction_delta(idx, {"a1"}) == {"a1"}
    assert original_construction_delta(idx, set()) == frozenset()


# -- rationality predicates ------------------------------------------------------

def test_projective_rationality_ex1():
    idx = ex1_index()
    assert is_projectively_rational(idx, DominantWeight.of({"a2": 1, "b2": 1}))
    assert not is_projectively_rational(idx, DominantWeight.of({"a2": 1}))
    assert is_projectively_rational(idx, DominantWeight.of({"a2": 1}), Level.R)


def test_strong_rationality_ex1():
    idx = ex1_index()
    w = DominantWeight.of({"a2": 1, "b2": 1})
    assert is_strongly_rational(idx, Level.Q, w)
    touching = DominantWeight.of({"a3": 1, "b3": 1})
    assert is_projectively_rational(idx, touching)
    assert not is_strongly_rational(idx, Level.Q, touching)


def test_spherical_necessary_ex1():
    idx = ex1_index()
    assert spherical_necessary(idx, {"a2", "b3"})
    assert not spherical_necessary(idx, {"a3"})


def test_spherical_necessary_needs_cstar_invariance():
    d = standard_diagram("A", 3)
    flip = NodeMap.from_cycles(d.nodes, [("a1", "a3")])
    idx = TwoLevelIndex(d, (), (), flip, ())
    assert spherical_necessary(idx, {"a1", "a3"})
    assert not spherical_necessary(idx, {"a1"})

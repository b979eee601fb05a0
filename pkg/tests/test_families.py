import random

from conftest import ex1_index
from figure1 import FIGURE1
from satcomp.diagram import standard_diagram
from satcomp.families import (
    family_b,
    family_bstar,
    family_f,
    family_fcirc,
    family_fstar,
    family_ftilde,
    hasse,
)
from satcomp.generate import random_equal_rank_index


def _sets(*groups):
    return {frozenset(g) for g in groups}


# -- complex-side families ------------------------------------------------------

def test_b3_families():
    d = standard_diagram("B", 3)
    comp = frozenset(d.nodes)
    assert family_ftilde(d, comp).members == _sets(
        {"a1"}, {"a2"}, {"a3"}, {"a2", "a3"}, {"a1", "a2", "a3"})
    assert family_f(d, comp).members == _sets(
        {"a3"}, {"a1"}, {"a2", "a3"}, {"a1", "a2", "a3"})
    assert family_fcirc(d, comp).members == _sets(
        {"a3"}, {"a2", "a3"}, {"a1", "a2", "a3"})


def test_e6_families():
    d = standard_diagram("E6", 6)
    comp = frozenset(d.nodes)
    a3 = frozenset({"a3", "a4", "a5"})
    a5 = frozenset({"a1", "a3", "a4", "a5", "a6"})
    full = frozenset(d.nodes)
    assert family_f(d, comp).members == {a5, full}
    assert family_ftilde(d, comp).members == {
        a3, a5, full, frozenset({"a2"}), frozenset({"a4"})}


def test_a1_component_families():
    d = standard_diagram("A", 1)
    comp = frozenset(d.nodes)
    assert family_ftilde(d, comp).members == {comp}
    assert family_f(d, comp).members == {comp}
    assert family_fstar(d, comp).members == {comp}


def test_fstar_drops_small_non_components():
    d = standard_diagram("B", 3)
    comp = frozenset(d.nodes)
    assert family_fstar(d, comp).members == _sets(
        {"a2", "a3"}, {"a1", "a2", "a3"})


def test_figure1_transcription():
    for (family, rank), data in FIGURE1.items():
        d = standard_diagram(family, rank)
        comp = frozenset(d.nodes)
        ftilde = family_ftilde(d, comp)
        f = family_f(d, comp)
        assert ftilde.members == set(data["ftilde"]), (family, rank)
        assert f.members == set(data["f"]), (family, rank)
        assert set(hasse(ftilde, d).covers) == set(data["ftilde_covers"]), \
            (family, rank)
        assert set(hasse(f, d).covers) == set(data["f_covers"]), (family, rank)


def test_monotone_promotion():
    # a member of F below a member of Ftilde promotes it into F
    for family, rank in FIGURE1:
        d = standard_diagram(family, rank)
        comp = frozenset(d.nodes)
        ftilde = family_ftilde(d, comp).members
        f = family_f(d, comp).members
        for psi in f:
            for prime in ftilde:
                if psi < prime:
                    assert prime in f, (family, rank, psi, prime)


# -- boundary-type families -------------------------------------------------------

def test_family_b_ex1():
    idx = ex1_index()
    fams = {frozenset(f.component): f for f in family_b(idx, {"a2", "b3"})}
    a_row = frozenset({"a1", "a2", "a3"})
    b_row = frozenset({"b1", "b2", "b3"})
    assert fams[a_row].members == _sets({"a2", "a3"}, {"a1", "a2", "a3"})
    assert fams[b_row].members == _sets({"b3"}, {"b2", "b3"}, {"b1", "b2", "b3"})


def test_family_b_empty_delta():
    idx = ex1_index()
    assert all(not f.members for f in family_b(idx, set()))


def test_family_b_long_end_delta():
    idx = ex1_index()
    fams = {frozenset(f.component): f for f in family_b(idx, {"a1", "b3"})}
    a_row = frozenset({"a1", "a2", "a3"})
    assert fams[a_row].members == _sets({"a1"}, {"a1", "a2", "a3"})


def test_family_bstar():
    idx = ex1_index()
    fams = {frozenset(f.component): f for f in family_bstar(idx, {"a1", "b3"})}
    a_row = frozenset({"a1", "a2", "a3"})
    assert fams[a_row].members == _sets({"a1", "a2", "a3"})


# -- hasse --------------------------------------------------------------------

def test_hasse_f_of_b3():
    d = standard_diagram("B", 3)
    hd = hasse(family_f(d, frozenset(d.nodes)), d)
    full = frozenset(d.nodes)
    assert set(hd.covers) == {
        (frozenset({"a3"}), frozenset({"a2", "a3"})),
        (frozenset({"a2", "a3"}), full),
        (frozenset({"a1"}), full)}


def test_hasse_singleton_family():
    d = standard_diagram("A", 1)
    hd = hasse(family_f(d, frozenset(d.nodes)), d)
    assert hd.nodes == (frozenset({"a1"}),)
    assert hd.covers == ()


def test_hasse_f_of_d4():
    d = standard_diagram("D", 4)
    hd = hasse(family_f(d, frozenset(d.nodes)), d)
    full = frozenset(d.nodes)
    tips = [frozenset({n}) for n in ("a1", "a3", "a4")]
    assert set(hd.covers) == {(t, full) for t in tips}


def test_b_members_are_in_ftilde_for_equal_rank():
    import itertools

    from satcomp.generate import admissible_deltas
    from satcomp.rationality import is_real_equal_rank

    rng = random.Random(5)
    found = 0
    while found < 20:
        idx = random_equal_rank_index(rng, max_rank=7)
        for delta in itertools.islice(admissible_deltas(idx), 8):
            if not is_real_equal_rank(idx, delta):
                continue
            for fam in family_b(idx, delta):
                ftilde = family_ftilde(idx.diagram, fam.component).members
                assert fam.members <= ftilde
            found += 1

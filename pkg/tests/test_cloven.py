from __future__ import annotations

import pytest

from finawfs.cloven import (
    LeftCleavage,
    RetractWitness,
    RightCleavage,
    cleavage_from_retract,
    compose_cloven,
    delta_cleavage,
    extend_cleavage,
    extend_cleavage_formula,
    find_cleavage_left,
    identity_cleavage,
    is_cloven_morphism,
    is_l_coalgebra,
    is_r_algebra,
    iter_cleavages_left,
    iter_cleavages_right,
    lift_via_cleavage,
    mu_cleavage,
    retract_of_L_witness,
)
from finawfs.core import ArrowSquare, compose, identity, iter_homs, iter_squares, solve_homs
from finawfs.errors import BoundaryMismatch, NotAnLMap
from finawfs.factor import factorize
from finawfs.instances import mod as md
from finawfs.instances import mset as ms
from finawfs.universe import Universe

MCAT, PM = ms.mset_category(), ms.free_comonad()
ZCAT, PZ = md.mod_category(6), md.free_comonad(6)
MU2 = Universe.full(MCAT.objects_up_to(2))
ZU3 = Universe.full(ZCAT.objects_up_to(3))
CASES = [(MU2, PM), (ZU3, PZ)]
IDS = ["mset", "zmod6"]


def brute_left(f, P):
    t = factorize(f, P)
    return [s for s in iter_homs(f.cod, t.E) if compose(s, f) == t.L and compose(t.R, s) == identity(f.cod)]


def brute_right(g, P):
    t = factorize(g, P)
    return [p for p in iter_homs(t.E, g.dom) if compose(p, t.L) == identity(g.dom) and compose(g, p) == t.R]


@pytest.mark.parametrize("U,P", CASES, ids=IDS)
def test_cleavage_search_matches_brute_force(U, P):
    for f in U.arrows:
        assert [c.s for c in iter_cleavages_left(f, P)] == brute_left(f, P)
        assert [c.p for c in iter_cleavages_right(f, P)] == brute_right(f, P)
        assert [c.s for c in iter_cleavages_left(f, P, reverse=True)] == brute_left(f, P)[::-1]


def test_one_point_trivial_mset_has_a_cleavage_but_no_coalgebra():
    T = MCAT.trivial(1)
    f = MCAT.initial_map(T)
    cs = list(iter_cleavages_left(f, PM))
    assert len(cs) == 1
    # P(T) = {(1, *), (e, *)} at indices 0, 1; the only fixed point of e is (e, *)
    assert cs[0].s.table == (1,)
    assert not is_l_coalgebra(cs[0])
    assert cs[0].law_failures() == []


@pytest.mark.parametrize("U,P", CASES, ids=IDS)
def test_free_structures(U, P):
    for f in U.arrows:
        assert is_l_coalgebra(delta_cleavage(f, P))
        assert is_r_algebra(mu_cleavage(f, P))


@pytest.mark.parametrize("U,P", CASES, ids=IDS)
def test_a_corrupted_right_structure_is_not_an_algebra(U, P):
    bad = None
    for g in U.arrows:
        t = factorize(g, P)
        for p in solve_homs(t.E, g.dom, post=[(g, t.R)]):
            if not is_r_algebra(RightCleavage(g, p, P)):
                bad = RightCleavage(g, p, P)
                break
        if bad:
            break
    assert bad is not None
    assert bad.law_failures() == ["p∘Lg = 1"]


def test_malformed_cleavages_report_their_failures():
    T = MCAT.trivial(1)
    f = MCAT.initial_map(T)
    t = factorize(f, PM)
    wrong = ms.MSetMorphism(T, t.E, [1])
    assert LeftCleavage(f, wrong, PM).is_valid()
    assert LeftCleavage(identity(T), wrong, PM).law_failures() == ["shape"]


@pytest.mark.parametrize("U,P", CASES, ids=IDS)
def test_identity_cleavage_is_a_unit(U, P):
    for f in U.arrows:
        for c in iter_cleavages_left(f, P):
            assert compose_cloven(identity_cleavage(f.dom, P), c) == c
            assert compose_cloven(c, identity_cleavage(f.cod, P)) == c
            break


def test_composition_needs_composable_maps():
    a, b = MCAT.trivial(1), MCAT.trivial(2)
    c1 = find_cleavage_left(MCAT.initial_map(a), PM)
    with pytest.raises(BoundaryMismatch):
        compose_cloven(c1, c1)
    with pytest.raises(BoundaryMismatch):
        extend_cleavage(c1, identity(b))


@pytest.mark.parametrize("U,P", CASES, ids=IDS)
def test_extension_is_cloven_and_agrees_with_the_lifting_formula(U, P):
    checked = 0
    for f in U.arrows:
        c = find_cleavage_left(f, P)
        if c is None:
            continue
        for g in U.arrows:
            if g.dom != f.cod:
                continue
            cg = find_cleavage_left(g, P)
            if cg is None:
                with pytest.raises(NotAnLMap):
                    extend_cleavage(c, g)
                continue
            t = extend_cleavage(c, g)
            sq = ArrowSquare(f, t.f, identity(f.dom), g)
            assert t.is_valid() and is_cloven_morphism(sq, c, t)
            assert extend_cleavage_formula(c, cg) == t
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("U,P", CASES, ids=IDS)
def test_lifts_through_cleavages_fill_squares(U, P):
    lefts = [c for f in U.arrows for c in iter_cleavages_left(f, P)][:12]
    rights = [r for g in U.arrows for r in iter_cleavages_right(g, P)][:12]
    for c in lefts:
        for r in rights:
            for sq in iter_squares(c.f, r.g):
                d = lift_via_cleavage(c, r, sq)
                assert compose(d, sq.f) == sq.h and compose(r.g, d) == sq.k


def test_lift_rejects_unrelated_squares():
    T = MCAT.trivial(1)
    c = find_cleavage_left(MCAT.initial_map(T), PM)
    r = mu_cleavage(identity(T), PM)
    with pytest.raises(BoundaryMismatch):
        lift_via_cleavage(c, r, ArrowSquare.identity(identity(T)))


@pytest.mark.parametrize("U,P", CASES, ids=IDS)
def test_retract_round_trip(U, P):
    for f in U.arrows:
        c = find_cleavage_left(f, P)
        if c is None:
            continue
        Lf = factorize(f, P).L
        w = retract_of_L_witness(c)
        assert w.holds(f, Lf)
        back = cleavage_from_retract(f, w, P)
        assert back.is_valid()


def test_retract_witness_rejects_non_witnesses():
    T = MCAT.trivial(1)
    one = identity(T)
    w = RetractWitness(one, one, one, one)
    assert w.holds(one, one)
    f = MCAT.initial_map(T)
    assert not w.holds(f, one)


def test_mset_monos_without_left_cleavage(mset_u2, PM):
    # a fixed point whose complement is moved back onto it cannot be cleaved
    odd = [f for f in mset_u2.arrows if ms.is_mono_mset(f) and find_cleavage_left(f, PM) is None]
    assert [(f.dom.encode(), f.cod.encode(), f.table) for f in odd] == [
        ("mset:{1,[0]}", "mset:{2,[0,0]}", (0,)),
        ("mset:{1,[0]}", "mset:{2,[1,1]}", (1,)),
    ]

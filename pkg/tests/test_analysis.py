from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finawfs.analysis import (
    eq12_compare,
    exists_l_membership,
    find_filler,
    find_isomorphism,
    has_llp,
    has_rlp,
    is_initial,
    is_retract_of,
    preimage_class,
    retract_closure,
)
from finawfs.core import compose, identity, identity_functor, iter_homs, iter_squares, limits
from finawfs.instances import mod as md
from finawfs.instances import mset as ms
from finawfs.universe import ClassSpec, Universe, empty_class, explicit_class

MCAT, PM = ms.mset_category(), ms.free_comonad()
ZCAT, PZ = md.mod_category(6), md.free_comonad(6)
MU2 = Universe.full(MCAT.objects_up_to(2))
ZU3 = Universe.full(ZCAT.objects_up_to(3))
SQUARES = [sq for U in (MU2, ZU3) for f in U.arrows[::3] for g in U.arrows[::3] for sq in iter_squares(f, g)]


def brute_retract(f, g):
    for i in iter_homs(f.dom, g.dom):
        for r in iter_homs(g.dom, f.dom):
            if compose(r, i) != identity(f.dom):
                continue
            for j in iter_homs(f.cod, g.cod):
                if compose(g, i) != compose(j, f):
                    continue
                for q in iter_homs(g.cod, f.cod):
                    if compose(q, j) == identity(f.cod) and compose(f, r) == compose(q, g):
                        return True
    return False


@given(st.sampled_from(SQUARES))
def test_filler_search_matches_brute_force(sq):
    found = find_filler(sq)
    brute = find_filler(sq, method="brute")
    assert found == brute
    if found is not None:
        assert compose(found, sq.f) == sq.h and compose(sq.g, found) == sq.k


@given(st.sampled_from(SQUARES))
def test_absence_is_invariant_under_reversed_order(sq):
    forward = find_filler(sq)
    backward = find_filler(sq, reverse=True)
    with limits(order="reverse"):
        ambient = find_filler(sq)
    assert (forward is None) == (backward is None) == (ambient is None)


def test_unknown_filler_method():
    with pytest.raises(ValueError):
        find_filler(SQUARES[0], method="guess")


def test_lifting_properties_match_their_definition():
    arrows = MU2.arrows
    cls = explicit_class("sample", arrows[::4])
    for f in arrows:
        expected_llp = all(find_filler(sq, method="brute") is not None for g in arrows[::4] for sq in iter_squares(f, g))
        expected_rlp = all(find_filler(sq, method="brute") is not None for g in arrows[::4] for sq in iter_squares(g, f))
        assert has_llp(f, cls, MU2) == expected_llp
        assert has_rlp(f, cls, MU2) == expected_rlp
    assert has_llp(arrows[0], empty_class(), MU2)


@pytest.mark.parametrize("U", [MU2, ZU3], ids=["mset", "zmod6"])
def test_retract_search_matches_brute_force(U):
    arrows = U.arrows[::2]
    for f, g in itertools.product(arrows, repeat=2):
        w = is_retract_of(f, g)
        assert (w is not None) == brute_retract(f, g)
        if w is not None:
            assert w.holds(f, g)
            assert (is_retract_of(f, g, reverse=True) is not None)


subsets = st.lists(st.sampled_from(range(len(MU2.arrows))), max_size=6, unique=True)


@given(subsets, subsets)
def test_retract_closure_is_a_closure_operator(a, b):
    arrows = MU2.arrows
    S = explicit_class("S", [arrows[i] for i in a])
    T = explicit_class("T", [arrows[i] for i in a + [j for j in b if j not in a]])
    RS = retract_closure(S, MU2)
    RT = retract_closure(T, MU2)
    members = set(RS.members(MU2))
    assert set(S.members(MU2)) <= members  # extensive
    assert members <= set(RT.members(MU2))  # monotone
    assert set(retract_closure(RS, MU2).members(MU2)) == members  # idempotent


def test_structural_membership_matches_coalgebra_search():
    for M in ZCAT.objects_up_to(8):
        f = ZCAT.initial_map(M)
        assert exists_l_membership(f, PZ, method="structural") == exists_l_membership(f, PZ, method="search")
    for X in MCAT.objects_up_to(3):
        f = MCAT.initial_map(X)
        assert exists_l_membership(f, PM, method="structural") == exists_l_membership(f, PM, method="search")
    with pytest.raises(ValueError):
        exists_l_membership(identity(ZCAT.obj(2)), PZ, method="structural")


def test_identity_functor_gives_no_strict_witnesses():
    for cat, P, bound in ((ZCAT, PZ, 12), (MCAT, PM, 3)):
        arrows = [cat.initial_map(M) for M in cat.objects_up_to(bound)]
        rep = eq12_compare(identity_functor(cat), arrows, P)
        assert rep.inclusion_holds and rep.strict_witnesses == []
        assert all(r.in_lhs == r.in_rhs for r in rep.rows)


def test_tensor_comparison_small():
    arrows = [ZCAT.initial_map(M) for M in ZCAT.objects_up_to(12)]
    rep = eq12_compare(md.tensor_functor(2, 6), arrows, PZ)
    assert rep.inclusion_holds
    strict = {f.cod for f in rep.strict_witnesses}
    assert strict == {f.cod for f in arrows if f.cod.p_rank(2) > 0}
    row = rep.row(ZCAT.initial_map(ZCAT.obj(3)))
    assert row.in_lhs and row.lhs_witness.holds(row.arrow, row.lhs_source)


def test_preimage_class_and_helpers():
    V = md.tensor_functor(2, 6)
    nonzero = ClassSpec("nonzero-codomain", lambda f: f.cod.size > 1)
    pre = preimage_class(V, nonzero)
    assert pre(ZCAT.initial_map(ZCAT.obj(2)))
    assert not pre(ZCAT.initial_map(ZCAT.obj(3)))
    assert is_initial(ZCAT.obj()) and not is_initial(ZCAT.obj(2))
    a, b = ZCAT.obj(2, 3), ZCAT.obj(6)
    u = find_isomorphism(a, b)
    assert u is not None and md.is_mono_module(u) and md.is_epi_module(u)
    assert find_isomorphism(ZCAT.obj(2), ZCAT.obj(3)) is None

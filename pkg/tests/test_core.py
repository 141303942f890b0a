from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finawfs.core import (
    ArrowSquare,
    ComonadDef,
    FunctorDef,
    apply_functor,
    category_law_failures,
    comonad_law_failures,
    compose,
    copair,
    coproduct,
    hom_count,
    identity,
    identity_functor,
    iter_homs,
    iter_squares,
    limits,
    search_order,
    solve_homs,
)
from finawfs.errors import BoundaryMismatch, DomainMismatch, HomSetTooLarge, NonCommutingSquare
from finawfs.instances import mod as md
from finawfs.instances import mset as ms
from finawfs.universe import Universe

MOD_SMALL = md.mod_category(6).objects_up_to(4)
MSET_SMALL = ms.mset_category().objects_up_to(2)
SMALL = MOD_SMALL + MSET_SMALL


def brute_homs(a, b):
    """Structure-preserving functions, found by filtering every set function."""
    cat = a.category
    src = list(cat.elements(a))
    dst = list(cat.elements(b))
    out = []
    for values in itertools.product(dst, repeat=len(src)):
        table = dict(zip(src, values))
        if isinstance(a, md.ModObject):
            ok = all(
                table[tuple((x + y) % a.divisor(i) for i, (x, y) in enumerate(zip(u, v)))]
                == tuple((x + y) % b.divisor(j) for j, (x, y) in enumerate(zip(table[u], table[v])))
                for u in src
                for v in src
            )
        else:
            ok = all(table[a.act(m, x)] == b.act(m, table[x]) for m in range(a.monoid.order) for x in src)
        if ok:
            out.append(table)
    return out


def as_table(h):
    return {x: h(x) for x in h.dom.category.elements(h.dom)}


pairs = st.sampled_from([(a, b) for a in MOD_SMALL for b in MOD_SMALL] + [(a, b) for a in MSET_SMALL for b in MSET_SMALL])


@given(pairs)
def test_hom_sets_match_brute_force(pair):
    a, b = pair
    homs = list(iter_homs(a, b))
    assert hom_count(a, b) == len(homs)
    assert sorted(map(str, map(as_table, homs))) == sorted(map(str, brute_homs(a, b)))
    assert list(solve_homs(a, b)) == homs
    assert list(iter_homs(a, b, reverse=True)) == homs[::-1]
    assert len(set(homs)) == len(homs)


@given(pairs, st.data())
def test_constrained_search_is_filtered_enumeration(pair, data):
    a, b = pair
    homs = list(iter_homs(a, b))
    if not homs:
        assert list(solve_homs(a, b)) == []
        return
    target = data.draw(st.sampled_from(homs))
    gens = a.category.generators(a)
    chosen = data.draw(st.lists(st.sampled_from(gens), max_size=2)) if gens else []
    points = [(v, target(v)) for v in chosen]
    post_g = data.draw(st.sampled_from(list(iter_homs(b, b))))
    post = [(post_g, compose(post_g, target))]
    expected = [h for h in homs if all(h(v) == w for v, w in points) and compose(post_g, h) == post[0][1]]
    assert list(solve_homs(a, b, points=points, post=post)) == expected
    assert list(solve_homs(a, b, points=points, post=post, reverse=True)) == expected[::-1]


def test_category_laws():
    for objs in (MOD_SMALL, MSET_SMALL):
        assert category_law_failures(Universe.full(objs).arrows) == []


@pytest.mark.parametrize("objs", [MOD_SMALL, MSET_SMALL], ids=["zmod6", "mset"])
def test_coproduct_universal_property(objs):
    for a, b, c in itertools.product(objs, repeat=3):
        cop = coproduct(a, b)
        maps = list(iter_homs(cop.obj, c))
        assert len(maps) == hom_count(a, c) * hom_count(b, c)
        for f in iter_homs(a, c):
            for g in iter_homs(b, c):
                u = copair(f, g)
                assert compose(u, cop.inj1) == f and compose(u, cop.inj2) == g


@pytest.mark.parametrize("objs", [MOD_SMALL, MSET_SMALL], ids=["zmod6", "mset"])
def test_initial_object(objs):
    cat = objs[0].category
    z = cat.initial()
    for a in objs:
        assert list(iter_homs(z, a)) == [cat.initial_map(a)]


def test_hom_cap_is_enforced_and_restored():
    cat = md.mod_category(6)
    big = cat.obj(6, 6, 6)
    with limits(cap=100):
        with pytest.raises(HomSetTooLarge) as exc:
            list(iter_homs(big, big))
        assert exc.value.count == 6**9 and exc.value.cap == 100
    with limits(cap=6**9):
        assert next(iter(iter_homs(big, big))) is not None
    with limits(order="reverse"):
        assert search_order() == "reverse"
    assert search_order() == "forward"
    with pytest.raises(ValueError):
        with limits(order="sideways"):
            pass


def test_square_validation():
    cat = ms.mset_category()
    T, T2 = cat.obj(1, [0]), cat.obj(2, [0, 1])
    f = identity(T)
    g = ms.MSetMorphism(T2, T, [0, 0])
    with pytest.raises(BoundaryMismatch):
        ArrowSquare(f, g, identity(T), identity(T))
    h = ms.MSetMorphism(T, T2, [1])
    sq = ArrowSquare(f, g, h, identity(T))
    assert sq.then(ArrowSquare.identity(g)) == sq
    u = cat.obj(2, [0, 0])
    k = ms.MSetMorphism(u, u, [0, 0])
    with pytest.raises(NonCommutingSquare):
        ArrowSquare(identity(u), identity(u), identity(u), k)
    with pytest.raises(BoundaryMismatch):
        compose(g, g)


def test_iter_squares_matches_definition():
    objs = MSET_SMALL
    arrows = Universe.full(objs).arrows
    for f in arrows[:8]:
        for g in arrows[:8]:
            expected = [
                (h, k)
                for h in iter_homs(f.dom, g.dom)
                for k in iter_homs(f.cod, g.cod)
                if compose(g, h) == compose(k, f)
            ]
            assert [(s.h, s.k) for s in iter_squares(f, g)] == expected


def test_functors():
    cat = ms.mset_category()
    I = identity_functor(cat)
    T = cat.obj(1, [0])
    assert I(T) == T
    with pytest.raises(DomainMismatch):
        apply_functor(I, md.mod_category(6).obj(2))
    F = FunctorDef("const", cat, cat, lambda x: T, lambda f: identity(T))
    assert F(identity(cat.obj(2, [0, 1]))) == identity(T)


@pytest.mark.parametrize(
    "P,objs",
    [(md.free_comonad(6), MOD_SMALL), (ms.free_comonad(), MSET_SMALL), (ms.free_comonad(ms.TRIVIAL), ms.finset_category().objects_up_to(3))],
    ids=["zmod6", "mset", "set"],
)
def test_free_comonads_satisfy_comonad_laws(P, objs):
    assert comonad_law_failures(P, objs, Universe.full(objs).arrows) == []


def test_comonad_law_checker_detects_broken_comultiplication():
    good = ms.free_comonad()

    def bad_comult(a):
        # (m, x) -> (m, (e, x)) instead of (m, (1, x))
        d = good.comult(a)
        k = a.monoid.order
        table = [((y // k) // k * k + 1) * k + y % k for y in d.table]
        return ms.MSetMorphism(d.dom, d.cod, table)

    bad = ComonadDef("bad", good.category, good.on_object, good.on_morphism, good.counit_at, bad_comult)
    fails = comonad_law_failures(bad, MSET_SMALL)
    left = {o for law, o in fails if law == "counit-left"}
    right = {o for law, o in fails if law == "counit-right"}
    assert {law for law, _ in fails} == {"counit-left", "counit-right"}
    assert left == {o for o in MSET_SMALL if o.size}
    # P(υ) sends (m, (e, x)) to (m, e·x): wrong exactly when e moves a point
    assert right == {o for o in MSET_SMALL if o.fixed_points(1) < o.size}

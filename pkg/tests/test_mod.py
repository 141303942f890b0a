from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finawfs.core import compose, identity, iter_homs
from finawfs.errors import EncodingError, UnsupportedRing
from finawfs.instances import mod as md
from finawfs.universe import Universe

CAT = md.mod_category(6)
OBJS12 = CAT.objects_up_to(12)
SMALL = CAT.objects_up_to(6)
ARROWS = Universe.full(SMALL).arrows


def brute_image(f):
    return {f(x) for x in f.dom.elements()}


def test_objects_up_to_36_are_the_divisor_multisets():
    # objects are compared by canonical form: sorted lists of divisors of 6 other than 1
    expected = set()
    for k in range(6):
        for combo in itertools.combinations_with_replacement((2, 3, 6), k):
            if math.prod(combo) <= 36:
                expected.add(combo)
    objs = CAT.objects_up_to(36)
    assert len(objs) == len(expected) == 20
    assert {o.factors for o in objs} == expected
    assert [o.size for o in objs] == sorted(o.size for o in objs)


def test_size_and_ranks():
    m = CAT.obj(2, 6, 6)
    assert m.size == 72 and m.rank == 3
    assert m.p_rank(2) == 3 and m.p_rank(3) == 2
    assert md.ModObject.of(6, [6, 2, 6, 1]) == m


def test_encoding_round_trip():
    for o in CAT.objects_up_to(36):
        assert md.parse_module(o.encode()) == o
    big = md.free_module(CAT.obj(2, 3))
    assert big.rank == 6 and md.parse_module(big.encode()) == big
    huge = md.free_module(CAT.obj(6, 6))
    assert "^" in huge.encode() and md.parse_module(huge.encode()) == huge


@pytest.mark.parametrize("text", ["zmod6:[3,2]", "zmod6:[1]", "zmod6:[4]", "zmod12:[2]", "zmod6[2]", "zmod6:[a]"])
def test_encoding_rejects_malformed_text(text):
    with pytest.raises(EncodingError):
        md.parse_module(text)


def test_non_squarefree_ring_is_rejected():
    with pytest.raises(UnsupportedRing):
        md.mod_category(12)


def test_hom_count_is_product_of_gcds():
    for a in OBJS12:
        for b in OBJS12:
            expected = math.prod(math.gcd(x, y) for x in a.factors for y in b.factors)
            assert CAT.hom_count(a, b) == expected


def test_matrix_round_trip_and_validation():
    a, b = CAT.obj(2, 6), CAT.obj(3, 6)
    for f in iter_homs(a, b):
        assert md.ModMorphism.from_matrix(a, b, f.matrix()) == f
    with pytest.raises(EncodingError):
        md.ModMorphism.from_matrix(a, b, [[1, 0]])
    with pytest.raises(EncodingError):
        # Z/2 -> Z/3 has no non-zero map
        md.ModMorphism.from_matrix(CAT.obj(2), CAT.obj(3), [[1]])


@pytest.mark.parametrize("f", ARROWS, ids=lambda f: repr(f))
def test_mono_epi_match_images(f):
    img = brute_image(f)
    assert md.is_mono_module(f) == (len(img) == f.dom.size)
    assert md.is_epi_module(f) == (len(img) == f.cod.size)
    # cokernel size is |cod| / |im f|; Z/6-modules are determined by their size
    assert md.cokernel(f).size == f.cod.size // len(img)


def test_freeness_and_projectivity():
    for o in OBJS12:
        assert md.is_free_module(o) == (o.size in (1, 6, 36))
        # Z/6 is a product of fields, so every module is projective
        assert md.is_projective_module(o)


def test_free_module_and_counit():
    m = CAT.obj(2, 3)
    pm = md.free_module(m)
    assert pm.size == 6 ** m.size
    eps = md.counit(m)
    assert md.is_epi_module(eps)
    for k, x in enumerate(m.elements()):
        e = tuple(int(i == k) for i in range(pm.rank))
        assert eps(e) == x


def quotient_by_2(m):
    """Cosets of 2M, as frozensets, by brute force."""
    twice = {tuple((2 * v) % d for v, d in zip(x, m.factors)) for x in m.elements()}
    cosets = set()
    for x in m.elements():
        cosets.add(frozenset(tuple((a + b) % d for a, b, d in zip(x, y, m.factors)) for y in twice))
    return cosets


@pytest.mark.parametrize("f", ARROWS, ids=lambda f: repr(f))
def test_tensor_with_z2_is_reduction_mod_2(f):
    V = md.tensor_functor(2, 6)
    vf = V(f)
    assert vf.dom.size == len(quotient_by_2(f.dom))
    assert vf.cod.size == len(quotient_by_2(f.cod))
    # the induced map on M/2M has the same image size as V(f)
    cod_cosets = quotient_by_2(f.cod)
    induced = {next(c for c in cod_cosets if f(x) in c) for x in f.dom.elements()}
    assert len(induced) == len(brute_image(vf))


def test_tensor_is_a_functor():
    V = md.tensor_functor(2, 6)
    by_dom = {}
    for f in ARROWS:
        by_dom.setdefault(f.dom, []).append(f)
    for f in ARROWS:
        assert V(identity(f.dom)) == identity(V(f.dom))
        for g in by_dom.get(f.cod, ()):
            assert V(compose(g, f)) == compose(V(g), V(f))


def test_tensor_z2_is_only_defined_over_z6():
    assert md.tensor_z2(CAT.obj(6)) == CAT.obj(2)
    with pytest.raises(UnsupportedRing):
        md.tensor_z2(md.mod_category(30).obj(30))
    assert md.tensor_functor(2, 30)(md.mod_category(30).obj(30)).factors == (2,)


@given(st.sampled_from(SMALL), st.data())
def test_dense_and_sparse_application_agree(m, data):
    f = data.draw(st.sampled_from(list(iter_homs(m, CAT.obj(2, 6)))))
    for x in m.elements():
        sparse = f.apply_sparse(tuple((i, v) for i, v in enumerate(x) if v))
        dense = f(x)
        assert dense == tuple(dict(sparse).get(j, 0) for j in range(f.cod.rank))


def test_rank_unrank_inverse():
    m = CAT.obj(2, 3, 6)
    for k, x in enumerate(m.elements()):
        assert m.rank_of(x) == k and m.unrank(k) == x
    big = md.free_module(md.free_module(CAT.obj(2)))
    for k in (0, 1, 6**5, big.size - 1):
        assert big.rank_sparse(big.unrank_sparse(k)) == k


def test_free_comonad_on_one_generator():
    # P(Z/2) is free of rank 2; Δ sends each generator to the generator on it
    m = CAT.obj(2)
    d = md.comult(m)
    pm = md.free_module(m)
    assert d.dom == pm and d.cod.rank == 36
    for k in range(2):
        assert d.col(k) == ((pm.rank_sparse(((k, 1),)), 1),)


def test_isomorphic_objects_stay_distinct():
    a, b = CAT.obj(2, 3), CAT.obj(6)
    assert a != b and md.ModObject.of(6, [3, 2]) == a
    assert md.cokernel(CAT.initial_map(a)) == b  # invariant-factor form

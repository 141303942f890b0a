from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finawfs.core import ArrowSquare, compose, identity, iter_homs, iter_squares, solve_homs
from finawfs.errors import DomainMismatch
from finawfs.factor import (
    AWFS_LAWS,
    E,
    check_awfs_laws,
    corrupted_delta,
    corrupted_mu,
    e_on_square,
    factorize,
    find_p_coalgebra,
    find_p_section,
)
from finawfs.instances import mod as md
from finawfs.instances import mset as ms
from finawfs.universe import Universe

MCAT, PM = ms.mset_category(), ms.free_comonad()
ZCAT, PZ = md.mod_category(6), md.free_comonad(6)
MU2 = Universe.full(MCAT.objects_up_to(2))
ZU3 = Universe.full(ZCAT.objects_up_to(3))
BOTH = [(f, PM) for f in MU2.arrows] + [(f, PZ) for f in ZU3.arrows]


@pytest.mark.parametrize("f,P", BOTH, ids=lambda x: repr(x) if not hasattr(x, "counit") else "")
def test_factorization_shape(f, P):
    t = factorize(f, P)
    assert compose(t.R, t.L) == f
    size = f.dom.category.size
    if P is PM:
        assert size(t.E) == size(f.dom) + size(P.obj(f.cod))  # disjoint union
    else:
        assert size(t.E) == size(f.dom) * size(P.obj(f.cod))  # direct sum
    assert compose(t.R, t.inj2) == P.counit(f.cod)
    assert factorize(f, P) is t


def test_structure_maps_are_the_unique_solutions_in_msets():
    """δ and μ by formula against an exhaustive search over their defining equations."""
    for f in MU2.arrows:
        t, X, Y = factorize(f, PM), f.dom, f.cod
        tL, tR = factorize(t.L, PM), factorize(t.R, PM)
        gens = MCAT.generators(t.E)
        deltas = list(
            solve_homs(
                t.E,
                tL.E,
                points=[(t.L(v), tL.L(t.L(v))) for v in MCAT.generators(X)],
                post=[(tL.R, identity(t.E)), (E(t.L, f, identity(X), t.R, PM), identity(t.E))],
            )
        )
        assert deltas == [t.delta]
        eL1 = E(f, t.R, t.L, identity(Y), PM)
        mus = list(
            solve_homs(
                tR.E,
                t.E,
                points=[(tR.L(v), v) for v in gens] + [(eL1(v), v) for v in gens],
                post=[(t.R, tR.R)],
            )
        )
        assert mus == [t.mu]


@given(st.sampled_from(MU2.arrows + ZU3.arrows), st.data())
def test_e_is_a_functor_on_squares(f, data):
    P = PM if isinstance(f, ms.MSetMorphism) else PZ
    U = MU2 if P is PM else ZU3
    assert e_on_square(ArrowSquare.identity(f), P) == identity(factorize(f, P).E)
    g = data.draw(st.sampled_from([g for g in U.arrows]))
    h = data.draw(st.sampled_from(U.arrows))
    s1 = list(iter_squares(f, g))
    s2 = list(iter_squares(g, h))
    if s1 and s2:
        a, b = data.draw(st.sampled_from(s1)), data.draw(st.sampled_from(s2))
        assert e_on_square(a.then(b), P) == compose(e_on_square(b, P), e_on_square(a, P))


def test_all_laws_hold_on_small_universes():
    for U, P in ((MU2, PM), (ZU3, PZ)):
        report = check_awfs_laws(U, P)
        assert report.passed, report.failures()[:3]
        assert set(report.laws()) == set(AWFS_LAWS)
        n = len(U.arrows)
        assert report.summary()["factor"] == (n, n)


@pytest.mark.parametrize("U,P", [(MU2, PM), (ZU3, PZ)], ids=["mset", "zmod6"])
def test_corrupted_comultiplication_breaks_coassociativity(U, P):
    report = check_awfs_laws(U, P, squares=False, delta_fn=corrupted_delta)
    assert "delta-coassoc" in report.failed_laws()
    assert not any(law.startswith("mu") for law in report.failed_laws())


@pytest.mark.parametrize("U,P", [(MU2, PM), (ZU3, PZ)], ids=["mset", "zmod6"])
def test_corrupted_multiplication_breaks_monad_laws(U, P):
    report = check_awfs_laws(U, P, squares=False, mu_fn=corrupted_mu)
    assert {"mu-unit-E", "mu-assoc"} <= report.failed_laws()
    assert not any(law.startswith("delta") for law in report.failed_laws())
    # each reported counterexample is a generator on which the two sides differ
    for r in report.failures():
        if r.law == "mu-R":
            f = U.arrows[r.subject]
            t = factorize(f, P)
            mu = corrupted_mu(t)
            assert compose(t.R, mu)(r.counterexample) != factorize(t.R, P).R(r.counterexample)


def test_comonad_from_another_category_is_rejected():
    with pytest.raises(DomainMismatch):
        factorize(identity(ZCAT.obj(2)), PM)


def test_p_sections_match_brute_force():
    for g in MU2.arrows:
        P = PM
        brute = [i for i in iter_homs(P.obj(g.cod), g.dom) if compose(g, i) == P.counit(g.cod)]
        found = find_p_section(g, P)
        assert (found is None) == (not brute)
        if found is not None:
            assert found == brute[0]


def test_p_coalgebras():
    T = MCAT.trivial(1)
    brute = [
        c
        for c in iter_homs(T, PM.obj(T))
        if compose(PM.counit(T), c) == identity(T) and compose(PM.comult(T), c) == compose(PM.map(c), c)
    ]
    assert brute == [] and find_p_coalgebra(T, PM) is None
    # a free object is a coalgebra through Δ
    c = find_p_coalgebra(PM.obj(MCAT.trivial(2)), PM)
    assert c is not None and compose(PM.counit(c.dom), c) == identity(c.dom)

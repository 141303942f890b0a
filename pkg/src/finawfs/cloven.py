"""Cleavages, cloven morphisms and the lifting operations they induce.

A left cleavage on ``f: A -> B`` is a filler ``s: B -> Ef`` of the square
``(Lf, 1): f -> Rf``; a right cleavage on ``g: C -> D`` is a filler
``p: Eg -> C`` of ``(1, Rg): Lg -> g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator

from .core import ArrowSquare, ComonadDef, compose, first, first_difference, identity, solve_homs
from .errors import BoundaryMismatch, NonCommutingSquare, NotAnLMap
from .factor import E, e_on_square, factorize


@dataclass(frozen=True)
class LeftCleavage:
    f: Any
    s: Any
    P: ComonadDef

    def law_failures(self) -> list[str]:
        t = factorize(self.f, self.P)
        out = []
        if self.s.dom != self.f.cod or self.s.cod != t.E:
            return ["shape"]
        if compose(self.s, self.f) != t.L:
            out.append("s∘f = Lf")
        if compose(t.R, self.s) != identity(self.f.cod):
            out.append("Rf∘s = 1")
        return out

    def is_valid(self) -> bool:
        return not self.law_failures()


@dataclass(frozen=True)
class RightCleavage:
    g: Any
    p: Any
    P: ComonadDef

    def law_failures(self) -> list[str]:
        t = factorize(self.g, self.P)
        out = []
        if self.p.dom != t.E or self.p.cod != self.g.dom:
            return ["shape"]
        if compose(self.p, t.L) != identity(self.g.dom):
            out.append("p∘Lg = 1")
        if compose(self.g, self.p) != t.R:
            out.append("g∘p = Rg")
        return out

    def is_valid(self) -> bool:
        return not self.law_failures()


def _generator_points(f, image_of):
    cat = f.dom.category
    return [(f(v), image_of(v)) for v in cat.generators(f.dom)]


def iter_cleavages_left(f, P: ComonadDef, *, reverse: bool | None = None) -> Iterator[LeftCleavage]:
    """Every left cleavage on ``f``, in canonical order of ``s``."""
    t = factorize(f, P)
    points = _generator_points(f, t.L)
    for s in solve_homs(f.cod, t.E, points=points, post=[(t.R, identity(f.cod))], reverse=reverse):
        yield LeftCleavage(f, s, P)


def iter_cleavages_right(g, P: ComonadDef, *, reverse: bool | None = None) -> Iterator[RightCleavage]:
    t = factorize(g, P)
    points = _generator_points(t.L, lambda v: v)
    for p in solve_homs(t.E, g.dom, points=points, post=[(g, t.R)], reverse=reverse):
        yield RightCleavage(g, p, P)


def find_cleavage_left(f, P: ComonadDef) -> LeftCleavage | None:
    """The first left cleavage on ``f``, re-verified, or None."""
    c = first(iter_cleavages_left(f, P))
    if c is not None:
        assert c.is_valid(), c.law_failures()
    return c


def find_cleavage_right(g, P: ComonadDef) -> RightCleavage | None:
    c = first(iter_cleavages_right(g, P))
    if c is not None:
        assert c.is_valid(), c.law_failures()
    return c


def is_l_coalgebra(c: LeftCleavage) -> bool:
    """``δ_f ∘ s = E(1, s) ∘ s``."""
    return first_difference(*_coalgebra_sides(c)) is None


def _coalgebra_sides(c: LeftCleavage):
    t = factorize(c.f, c.P)
    E_1_s = E(c.f, t.L, identity(c.f.dom), c.s, c.P)
    return compose(t.delta, c.s), compose(E_1_s, c.s)


def is_r_algebra(c: RightCleavage) -> bool:
    """``p ∘ μ_g = p ∘ E(p, 1)``."""
    t = factorize(c.g, c.P)
    try:
        E_p_1 = E(t.R, c.g, c.p, identity(c.g.cod), c.P)
    except NonCommutingSquare:
        return False
    return compose(c.p, t.mu) == compose(c.p, E_p_1)


def is_cloven_morphism(sq: ArrowSquare, c1: LeftCleavage, c2: LeftCleavage) -> bool:
    """``E(h, k) ∘ s = t ∘ k`` for ``(h, k): (f, s) -> (g, t)``."""
    if sq.f != c1.f or sq.g != c2.f:
        raise BoundaryMismatch("square does not connect the cleaved maps")
    return compose(e_on_square(sq, c1.P), c1.s) == compose(c2.s, sq.k)


def lift_via_cleavage(c: LeftCleavage, r: RightCleavage, sq: ArrowSquare):
    """The filler ``p ∘ E(h, k) ∘ s`` of ``sq: c.f -> r.g``; both triangles are re-checked."""
    if sq.f != c.f or sq.g != r.g:
        raise BoundaryMismatch("square does not connect the cleaved maps")
    d = compose(r.p, compose(e_on_square(sq, c.P), c.s))
    if compose(d, sq.f) != sq.h or compose(sq.g, d) != sq.k:
        raise AssertionError("lift_via_cleavage produced an invalid filler")
    return d


# -- algebra structures carried by every factor --------------------------------


def delta_cleavage(f, P: ComonadDef) -> LeftCleavage:
    """``(Lf, δ_f)``, the free coalgebra."""
    t = factorize(f, P)
    return LeftCleavage(t.L, t.delta, P)


def mu_cleavage(f, P: ComonadDef) -> RightCleavage:
    """``(Rf, μ_f)``, the free algebra."""
    t = factorize(f, P)
    return RightCleavage(t.R, t.mu, P)


# -- composition -----------------------------------------------------------------


def identity_cleavage(A, P: ComonadDef) -> LeftCleavage:
    """``(1_A, L1_A)``."""
    one = identity(A)
    return LeftCleavage(one, factorize(one, P).L, P)


def compose_cloven(c1: LeftCleavage, c2: LeftCleavage) -> LeftCleavage:
    """The cleavage on ``g∘f`` obtained by lifting against ``f`` first.

    The square ``(L(gf), 1): gf -> R(gf)`` is filled by lifting
    ``(L(gf), g): f -> R(gf)`` through ``s`` and then
    ``(d1, 1): g -> R(gf)`` through ``t``, both against the free algebra
    ``(R(gf), μ_gf)``.
    """
    f, g, P = c1.f, c2.f, c1.P
    if f.cod != g.dom:
        raise BoundaryMismatch("cleaved maps are not composable")
    gf = compose(g, f)
    tgf = factorize(gf, P)
    alg = mu_cleavage(gf, P)
    d1 = lift_via_cleavage(c1, alg, ArrowSquare(f, tgf.R, tgf.L, g))
    u = lift_via_cleavage(c2, alg, ArrowSquare(g, tgf.R, d1, identity(g.cod)))
    return LeftCleavage(gf, u, P)


def extend_cleavage(c: LeftCleavage, g) -> LeftCleavage:
    """A cleavage ``t`` on ``g∘f`` making ``(1, g): (f, s) -> (gf, t)`` cloven.

    ``t`` is the first map ``C -> E(gf)`` with ``t∘g = E(1, g)∘s`` and
    ``R(gf)∘t = 1``; raises :class:`NotAnLMap` when ``g`` has no cleavage.
    """
    f, P = c.f, c.P
    if f.cod != g.dom:
        raise BoundaryMismatch("maps are not composable")
    if find_cleavage_left(g, P) is None:
        raise NotAnLMap(f"{g!r} admits no left cleavage")
    gf = compose(g, f)
    tgf = factorize(gf, P)
    top = compose(E(f, gf, identity(f.dom), g, P), c.s)
    points = _generator_points(g, top)
    t = first(solve_homs(g.cod, tgf.E, points=points, post=[(tgf.R, identity(g.cod))]))
    if t is None:
        raise NotAnLMap("no extension filler exists")
    out = LeftCleavage(gf, t, P)
    assert out.is_valid(), out.law_failures()
    return out


def extend_cleavage_formula(c: LeftCleavage, cg: LeftCleavage) -> LeftCleavage:
    """The same extension, built by lifting ``(E(1,g)∘s, 1): g -> R(gf)`` through ``cg``."""
    f, g, P = c.f, cg.f, c.P
    gf = compose(g, f)
    tgf = factorize(gf, P)
    top = compose(E(f, gf, identity(f.dom), g, P), c.s)
    t = lift_via_cleavage(cg, mu_cleavage(gf, P), ArrowSquare(g, tgf.R, top, identity(g.cod)))
    return LeftCleavage(gf, t, P)


# -- the retract argument --------------------------------------------------------


@dataclass(frozen=True)
class RetractWitness:
    """``(i, j): f -> g`` and ``(r, q): g -> f`` with ``r∘i = 1`` and ``q∘j = 1``."""

    i: Any
    j: Any
    r: Any
    q: Any

    def holds(self, f, g) -> bool:
        try:
            ArrowSquare(f, g, self.i, self.j)
            ArrowSquare(g, f, self.r, self.q)
        except (NonCommutingSquare, BoundaryMismatch):
            return False
        return compose(self.r, self.i) == identity(f.dom) and compose(self.q, self.j) == identity(f.cod)

    def image(self, V) -> "RetractWitness":
        return RetractWitness(V(self.i), V(self.j), V(self.r), V(self.q))


def retract_of_L_witness(c: LeftCleavage) -> RetractWitness:
    """``f`` is a retract of ``Lf`` via ``(1, s)`` and ``(1, Rf)``."""
    t = factorize(c.f, c.P)
    one = identity(c.f.dom)
    return RetractWitness(one, c.s, one, t.R)


def cleavage_from_retract(f, w: RetractWitness, P: ComonadDef) -> LeftCleavage:
    """Transport the free coalgebra on ``Lf`` back along a retraction ``f -> Lf -> f``.

    Lifts ``(Lf∘r, q): Lf -> Rf`` through ``(Lf, δ_f)`` against
    ``(Rf, μ_f)`` and precomposes with ``j``.
    """
    t = factorize(f, P)
    d = lift_via_cleavage(delta_cleavage(f, P), mu_cleavage(f, P), ArrowSquare(t.L, t.R, compose(t.L, w.r), w.q))
    out = LeftCleavage(f, compose(d, w.j), P)
    assert out.is_valid(), out.law_failures()
    return out

"""Lifting, retract and class-closure oracles over finite universes.

Every "absent" answer here is the result of an exhaustive search and can
be re-derived with the enumeration order reversed (see
:func:`finawfs.core.limits`).  Classes are relative to the universe they
are computed over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .cloven import (
    LeftCleavage,
    RetractWitness,
    delta_cleavage,
    is_l_coalgebra,
    iter_cleavages_left,
)
from .core import (
    ArrowSquare,
    ComonadDef,
    FunctorDef,
    compose,
    first,
    identity,
    iter_homs,
    iter_squares,
    solve_homs,
)
from .errors import BoundaryMismatch
from .factor import factorize
from .universe import ClassSpec, Universe, empty_class, explicit_class

__all__ = [
    "ClassSpec",
    "ComparisonReport",
    "Universe",
    "empty_class",
    "eq12_compare",
    "exists_l_membership",
    "explicit_class",
    "find_filler",
    "find_isomorphism",
    "has_llp",
    "has_rlp",
    "is_initial",
    "is_retract_of",
    "preimage_class",
    "retract_closure",
]


# -- fillers ---------------------------------------------------------------------


def find_filler(sq: ArrowSquare, *, method: str = "search", reverse: bool | None = None):
    """First ``d`` with ``d∘f = h`` and ``g∘d = k``, or None.

    ``method="search"`` uses the constraint solver; ``method="brute"``
    filters the full hom-set (subject to the hom cap) and serves as its
    oracle.  Both return the same first witness.
    """
    f, g, h, k = sq.f, sq.g, sq.h, sq.k
    B, C = f.cod, g.dom
    if method == "brute":
        for d in iter_homs(B, C, reverse=reverse):
            if compose(d, f) == h and compose(g, d) == k:
                return d
        return None
    if method != "search":
        raise ValueError(f"unknown method {method!r}")
    gens = f.dom.category.generators(f.dom)
    points = [(f(v), h(v)) for v in gens]
    d = first(solve_homs(B, C, points=points, post=[(g, k)], reverse=reverse))
    if d is not None:
        assert compose(d, f) == h and compose(g, d) == k
    return d


def has_llp(f, S: ClassSpec, U: Universe) -> bool:
    """Every square from ``f`` to a member of ``S`` in ``U`` has a filler."""
    return all(find_filler(sq) is not None for g in S.members(U) for sq in iter_squares(f, g))


def has_rlp(g, S: ClassSpec, U: Universe) -> bool:
    """Every square from a member of ``S`` in ``U`` to ``g`` has a filler."""
    return all(find_filler(sq) is not None for f in S.members(U) for sq in iter_squares(f, g))


# -- retracts --------------------------------------------------------------------


def is_retract_of(f, g, *, reverse: bool | None = None) -> RetractWitness | None:
    """First retract witness exhibiting ``f`` as a retract of ``g``, or None.

    Candidates are searched in the nested order ``i``, ``r``, ``j``, ``q``
    (each in canonical hom order); ``j`` is pruned column by column on the
    solvability of the remaining equations for ``q``.  When ``f == g`` the
    identity witness is returned directly.
    """
    if f == g:
        A, B = identity(f.dom), identity(f.cod)
        return RetractWitness(A, B, A, B)
    A, B, C, D = f.dom, f.cod, g.dom, g.cod
    if A.category != C.category:
        raise BoundaryMismatch("arrows live in different categories")
    catA = A.category
    if not (catA.may_embed(A, C) and catA.may_embed(B, D)):
        return None  # i and j would have to be split monos
    gensA = catA.generators(A)
    gensB = catA.generators(B)
    gensC = catA.generators(C)
    for i in iter_homs(A, C, reverse=reverse):
        r_points = [(i(v), v) for v in gensA]
        gi = compose(g, i)
        j_points = [(f(v), gi(v)) for v in gensA]
        for r in solve_homs(C, A, points=r_points, reverse=reverse):
            fr = compose(f, r)
            # (r, q): g -> f needs q∘g = f∘r
            q_base = [(g(c), fr(c)) for c in gensC]

            def q_feasible(partial, q_base=q_base):
                pts = q_base + [(img, src) for src, img in partial]
                return first(solve_homs(D, B, points=pts)) is not None

            for j in solve_homs(B, D, points=j_points, prune=q_feasible, reverse=reverse):
                q_points = q_base + [(j(b), b) for b in gensB]
                q = first(solve_homs(D, B, points=q_points, reverse=reverse))
                if q is not None:
                    w = RetractWitness(i, j, r, q)
                    assert w.holds(f, g)
                    return w
    return None


def retract_closure(S: ClassSpec, U: Universe, *, name: str | None = None) -> ClassSpec:
    """``f`` is a member iff it is a retract of some member of ``S`` in ``U``."""
    sources = S.members(U)

    def predicate(f) -> bool:
        return any(is_retract_of(f, g) is not None for g in sources)

    return ClassSpec(name or f"Retr({S.name})", predicate, "search")


def retract_source(f, S: ClassSpec, U: Universe):
    """``(g, witness)`` for the first member ``g`` of ``S`` that ``f`` is a retract of."""
    for g in S.members(U):
        w = is_retract_of(f, g)
        if w is not None:
            return g, w
    return None


def preimage_class(V: FunctorDef, S: ClassSpec) -> ClassSpec:
    return ClassSpec(f"{V.name}⁻¹({S.name})", lambda f: S(V(f)), S.provenance)


# -- the class ∃L ------------------------------------------------------------------


def is_initial(obj) -> bool:
    return obj == obj.category.initial()


def _structural_free(obj) -> bool:
    from .instances.mod import ModObject, is_free_module
    from .instances.mset import MSetObject, is_free_mset

    if isinstance(obj, ModObject):
        return is_free_module(obj)
    if isinstance(obj, MSetObject):
        return is_free_mset(obj)
    raise TypeError(f"no structural freeness test for {obj!r}")


def find_l_coalgebra(f, P: ComonadDef) -> LeftCleavage | None:
    """First left cleavage on ``f`` that is a coalgebra for the comonad ``L``."""
    for c in iter_cleavages_left(f, P):
        if is_l_coalgebra(c):
            return c
    return None


def exists_l_membership(f, P: ComonadDef, *, method: str = "auto") -> bool:
    """Does ``f`` carry the structure of a coalgebra for ``L``?

    ``method`` is ``"search"`` (exhaustive over cleavages), ``"structural"``
    (only for arrows out of the initial object: freeness of the codomain)
    or ``"auto"`` (structural where it applies, search otherwise).
    """
    if method == "structural" or (method == "auto" and is_initial(f.dom)):
        if not is_initial(f.dom):
            raise ValueError("the structural test only covers arrows out of the initial object")
        return _structural_free(f.cod)
    if method not in ("auto", "search"):
        raise ValueError(f"unknown method {method!r}")
    return find_l_coalgebra(f, P) is not None


def exists_l_class(P: ComonadDef, *, method: str = "auto", known: Sequence = ()) -> ClassSpec:
    """``∃L`` as a class; ``known`` lists arrows ``g`` whose hulls ``Lg`` may be queried.

    A hull ``Lg`` out of a non-initial object is certified by checking that
    ``(Lg, δ_g)`` is a coalgebra, with no search.
    """
    hulls = {factorize(g, P).L: g for g in known}

    def predicate(f) -> bool:
        if method == "auto" and not is_initial(f.dom) and f in hulls:
            return is_l_coalgebra(delta_cleavage(hulls[f], P))
        return exists_l_membership(f, P, method=method)

    return ClassSpec("∃L", predicate, "structural" if method != "search" else "search")


# -- isomorphisms ------------------------------------------------------------------


def _is_iso(u) -> bool:
    from .instances.mod import ModMorphism, is_epi_module, is_mono_module
    from .instances.mset import is_epi_mset, is_mono_mset

    if isinstance(u, ModMorphism):
        return is_mono_module(u) and is_epi_module(u)
    return is_mono_mset(u) and is_epi_mset(u)


def find_isomorphism(a, b):
    """First isomorphism ``a -> b`` in canonical order (brute force), or None."""
    if a.category != b.category or a.category.size(a) != b.category.size(b):
        return None
    for u in iter_homs(a, b):
        if _is_iso(u):
            return u
    return None


# -- the comparison of the two lifted classes ---------------------------------------


@dataclass
class ArrowRow:
    arrow: Any
    image: Any
    in_preimage: bool
    in_lhs: bool
    lhs_source: Any = None
    lhs_witness: RetractWitness | None = None
    in_rhs: bool = False
    rhs_source: Any = None
    rhs_witness: RetractWitness | None = None


@dataclass
class ComparisonReport:
    """``Retr(V⁻¹∃L)`` against ``V⁻¹Retr(∃L)`` over a finite universe."""

    functor: str
    rows: list[ArrowRow]
    violations: list = field(default_factory=list)
    inclusion_checks: list[tuple[Any, bool]] = field(default_factory=list)

    @property
    def inclusion_holds(self) -> bool:
        return not self.violations and all(ok for _, ok in self.inclusion_checks)

    @property
    def strict_witnesses(self) -> list:
        return [r.arrow for r in self.rows if r.in_rhs and not r.in_lhs]

    def row(self, f) -> ArrowRow:
        return next(r for r in self.rows if r.arrow == f)


def hull_arrows(arrows: Sequence, P: ComonadDef) -> list:
    """``Lg`` for each ``g``: the canonical ``∃L`` arrow each ``g`` may retract onto."""
    return [factorize(g, P).L for g in arrows]


def eq12_compare(
    V: FunctorDef,
    U: Universe | Sequence,
    P: ComonadDef,
    *,
    method: str = "auto",
) -> ComparisonReport:
    """Compare ``Retr(V⁻¹(∃L))`` with ``V⁻¹(Retr(∃L))`` on the arrows of ``U``.

    The left side takes retracts among ``U`` (plus the hulls ``Lg`` when
    ``V`` is an endofunctor of the comonad's category); the right side
    takes retracts among ``V(U)``, the images of the left-hand sources and
    the hulls ``L(Vg)``.  For ``V`` the
    identity both sides are thus computed over the same arrows.

    The inclusion is checked where it is literally true: for each ``f`` on
    the left with source ``g``, the ``V``-image of the retract witness is
    re-verified as a witness of ``Vf`` as a retract of ``Vg``.
    """
    arrows = list(getattr(U, "arrows", U))
    images = [V(f) for f in arrows]

    def dedupe(xs):
        out, seen = [], set()
        for x in xs:
            if x not in seen:
                seen.add(x)
                out.append(x)
        return out

    endo = V.source == P.category
    known = dedupe(images + (arrows if endo else []))
    exists_l = exists_l_class(P, method=method, known=known)
    source_pool = dedupe(arrows + (hull_arrows(arrows, P) if endo else []))
    pre = [g for g in source_pool if exists_l(V(g))]

    # V-images of the left-hand sources keep the inclusion literally checkable
    target = dedupe(images + [V(g) for g in pre] + hull_arrows(dedupe(images), P))
    in_target_l = [g for g in target if exists_l(g)]

    rows: list[ArrowRow] = []
    violations = []
    checks = []
    for f, vf in zip(arrows, images):
        row = ArrowRow(f, vf, exists_l(vf), False)
        for g in pre:
            w = is_retract_of(f, g)
            if w is not None:
                row.in_lhs, row.lhs_source, row.lhs_witness = True, g, w
                break
        for g in in_target_l:
            w = is_retract_of(vf, g)
            if w is not None:
                row.in_rhs, row.rhs_source, row.rhs_witness = True, g, w
                break
        if row.in_lhs:
            vw = row.lhs_witness.image(V)
            checks.append((f, vw.holds(vf, V(row.lhs_source)) and exists_l(V(row.lhs_source))))
            if not row.in_rhs:
                violations.append(f)
        rows.append(row)
    return ComparisonReport(V.name, rows, violations, checks)

"""Kernel for finite concrete categories.

Every instance category (modules over ``Z/n``, ``M``-sets, finite sets)
implements the small :class:`Category` protocol below; the free functions
in this module dispatch on the category carried by each object, so
downstream code never needs to know which instance it is working in.

Objects are compared by canonical form, never up to isomorphism.  All
objects and morphisms are immutable; the only mutable state is the
per-context configuration of :func:`limits`.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, NamedTuple, Protocol, Sequence

from .errors import BoundaryMismatch, DomainMismatch, HomSetTooLarge, NonCommutingSquare

DEFAULT_HOM_CAP = 10**6

_hom_cap: ContextVar[int] = ContextVar("hom_cap", default=DEFAULT_HOM_CAP)
_search_order: ContextVar[str] = ContextVar("search_order", default="forward")


def hom_cap() -> int:
    return _hom_cap.get()


def search_order() -> str:
    return _search_order.get()


@contextmanager
def limits(*, cap: int | None = None, order: str | None = None):
    """Temporarily override the hom-set cap and/or the enumeration order.

    ``order`` is ``"forward"`` (lexicographic) or ``"reverse"``; reverse
    order exists so that absence certificates can be re-derived by an
    independent sweep.
    """
    tokens = []
    if cap is not None:
        tokens.append((_hom_cap, _hom_cap.set(cap)))
    if order is not None:
        if order not in ("forward", "reverse"):
            raise ValueError(f"unknown search order {order!r}")
        tokens.append((_search_order, _search_order.set(order)))
    try:
        yield
    finally:
        for var, token in reversed(tokens):
            var.reset(token)


def check_cap(count: int) -> None:
    cap = _hom_cap.get()
    if count > cap:
        raise HomSetTooLarge(count, cap)


class Coproduct(NamedTuple):
    obj: Any
    inj1: Any
    inj2: Any


class Category(Protocol):
    """What an instance category must provide."""

    name: str

    def identity(self, a) -> Any: ...

    def compose(self, g, f) -> Any: ...

    def coproduct(self, a, b) -> Coproduct: ...

    def copair(self, f, g) -> Any: ...

    def initial(self) -> Any: ...

    def initial_map(self, a) -> Any: ...

    def generators(self, a) -> list: ...

    def hom_count(self, a, b) -> int: ...

    def iter_homs(self, a, b, reverse: bool = False) -> Iterator[Any]: ...

    def solve(self, a, b, points=(), post=(), prune=None, reverse: bool = False) -> Iterator[Any]: ...

    def objects_up_to(self, max_size: int) -> list: ...

    def may_embed(self, a, b) -> bool: ...


# -- basic operations ------------------------------------------------------


def compose(g, f):
    """``g ∘ f``; raises :class:`BoundaryMismatch` unless ``cod f == dom g``."""
    if f.cod != g.dom:
        raise BoundaryMismatch(f"cannot compose: cod f = {f.cod} but dom g = {g.dom}")
    return f.dom.category.compose(g, f)


def compose_all(*maps):
    """Compose right-to-left: ``compose_all(h, g, f) == h ∘ g ∘ f``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def identity(a):
    return a.category.identity(a)


def coproduct(a, b) -> Coproduct:
    if a.category != b.category:
        raise BoundaryMismatch("coproduct of objects from different categories")
    return a.category.coproduct(a, b)


def copair(f, g):
    """The map ``A + B -> C`` restricting to ``f`` and ``g``."""
    if f.cod != g.cod:
        raise BoundaryMismatch(f"copair needs a common codomain, got {f.cod} and {g.cod}")
    return f.dom.category.copair(f, g)


def coproduct_map(h1, h2):
    """``h1 + h2 : A1 + A2 -> B1 + B2``."""
    target = coproduct(h1.cod, h2.cod)
    return copair(compose(target.inj1, h1), compose(target.inj2, h2))


def hom_count(a, b) -> int:
    return a.category.hom_count(a, b)


def iter_homs(a, b, *, reverse: bool | None = None) -> Iterator:
    """Lazily enumerate ``Hom(a, b)`` in canonical lexicographic order.

    Raises :class:`HomSetTooLarge` once the configured cap is exceeded.
    """
    if reverse is None:
        reverse = _search_order.get() == "reverse"
    return a.category.iter_homs(a, b, reverse=reverse)


def enumerate_homs(a, b, *, reverse: bool | None = None) -> list:
    return list(iter_homs(a, b, reverse=reverse))


def solve_homs(a, b, *, points=(), post=(), prune=None, reverse: bool | None = None) -> Iterator:
    """Enumerate maps ``x: a -> b`` subject to constraints, lexicographically.

    ``points`` is a sequence of ``(v, w)`` with ``x(v) == w``; ``post`` is a
    sequence of ``(g, k)`` with ``g ∘ x == k``.  ``prune`` receives the
    partial assignment as ``[(source element, image), ...]`` and may return
    False to cut the branch.  The search is exhaustive: an empty iterator is
    a proof that no such map exists.
    """
    if reverse is None:
        reverse = _search_order.get() == "reverse"
    return a.category.solve(a, b, points=points, post=post, prune=prune, reverse=reverse)


def first(it: Iterable):
    return next(iter(it), None)


def precompose_points(f, h) -> list:
    """Point constraints equivalent to ``x ∘ f == h``."""
    if f.cod.category != h.cod.category or f.dom != h.dom:
        raise BoundaryMismatch("x ∘ f == h needs dom f == dom h")
    return [(f(v), h(v)) for v in f.dom.category.generators(f.dom)]


def first_difference(u, v):
    """First generator of ``dom u`` on which ``u`` and ``v`` disagree, else None."""
    if u.dom != v.dom or u.cod != v.cod:
        raise BoundaryMismatch("comparing maps with different boundaries")
    return u.dom.category.first_difference(u, v)


# -- arrow category --------------------------------------------------------


@dataclass(frozen=True)
class ArrowSquare:
    """A map ``(h, k): f -> g`` in the arrow category::

        A --h--> C
        |f       |g
        v        v
        B --k--> D
    """

    f: Any
    g: Any
    h: Any
    k: Any

    def __post_init__(self):
        f, g, h, k = self.f, self.g, self.h, self.k
        if h.dom != f.dom or h.cod != g.dom or k.dom != f.cod or k.cod != g.cod:
            raise BoundaryMismatch("square sides do not match the arrows")
        if compose(g, h) != compose(k, f):
            raise NonCommutingSquare(f"g∘h != k∘f for f = {f}, g = {g}")

    def then(self, other: "ArrowSquare") -> "ArrowSquare":
        """Paste ``other`` after this square (vertical composite in M^2)."""
        if other.f != self.g:
            raise BoundaryMismatch("squares do not paste")
        return ArrowSquare(self.f, other.g, compose(other.h, self.h), compose(other.k, self.k))

    @staticmethod
    def identity(f) -> "ArrowSquare":
        return ArrowSquare(f, f, identity(f.dom), identity(f.cod))


def iter_squares(f, g) -> Iterator[ArrowSquare]:
    """All commuting squares ``f -> g``, ordered by ``h`` then ``k``."""
    for h in iter_homs(f.dom, g.dom):
        gh = compose(g, h)
        for k in solve_homs(f.cod, g.cod, points=precompose_points(f, gh)):
            yield ArrowSquare(f, g, h, k)


# -- functors and comonads -------------------------------------------------


@dataclass(frozen=True)
class FunctorDef:
    name: str
    source: Any
    target: Any
    on_object: Callable = None
    on_morphism: Callable = None

    def __call__(self, x):
        return apply_functor(self, x)


def apply_functor(F: FunctorDef, x):
    """Apply ``F`` to an object or a morphism of its source category."""
    if hasattr(x, "dom"):
        if x.dom.category != F.source:
            raise DomainMismatch(f"{F.name} expects morphisms of {F.source.name}")
        return F.on_morphism(x)
    if x.category != F.source:
        raise DomainMismatch(f"{F.name} expects objects of {F.source.name}")
    return F.on_object(x)


def identity_functor(category) -> FunctorDef:
    return FunctorDef(f"id[{category.name}]", category, category, lambda a: a, lambda f: f)


@dataclass(frozen=True)
class ComonadDef:
    """A comonad ``(P, counit, comult)`` on an instance category."""

    name: str
    category: Any
    on_object: Callable
    on_morphism: Callable
    counit_at: Callable
    comult_at: Callable

    def obj(self, a):
        if a.category != self.category:
            raise DomainMismatch(f"{self.name} lives on {self.category.name}")
        return self.on_object(a)

    def map(self, f):
        if f.dom.category != self.category:
            raise DomainMismatch(f"{self.name} lives on {self.category.name}")
        return self.on_morphism(f)

    def counit(self, a):
        return self.counit_at(a)

    def comult(self, a):
        return self.comult_at(a)


def comonad_law_failures(P: ComonadDef, objects: Sequence, morphisms: Sequence = ()) -> list[tuple]:
    """Check counit laws, coassociativity and naturality; return failures.

    Each failure is ``(law, subject)``.  ``morphisms`` are used for the
    naturality squares of counit and comultiplication.
    """
    failures = []
    for a in objects:
        pa = P.obj(a)
        comult = P.comult(a)
        if compose(P.counit(pa), comult) != identity(pa):
            failures.append(("counit-left", a))
        if compose(P.map(P.counit(a)), comult) != identity(pa):
            failures.append(("counit-right", a))
        if compose(P.comult(pa), comult) != compose(P.map(comult), comult):
            failures.append(("coassociativity", a))
    for f in morphisms:
        pf = P.map(f)
        if compose(f, P.counit(f.dom)) != compose(P.counit(f.cod), pf):
            failures.append(("counit-naturality", f))
        if compose(P.map(pf), P.comult(f.dom)) != compose(P.comult(f.cod), pf):
            failures.append(("comult-naturality", f))
    return failures


def category_law_failures(morphisms: Sequence) -> list[tuple]:
    """Identity and associativity laws over every composable pair/triple."""
    failures = []
    by_dom: dict = {}
    for f in morphisms:
        by_dom.setdefault(f.dom, []).append(f)
    for f in morphisms:
        if compose(identity(f.cod), f) != f or compose(f, identity(f.dom)) != f:
            failures.append(("identity", f))
        for g in by_dom.get(f.cod, ()):
            gf = compose(g, f)
            for h in by_dom.get(g.cod, ()):
                if compose(compose(h, g), f) != compose(h, gf):
                    failures.append(("associativity", (f, g, h)))
    return failures

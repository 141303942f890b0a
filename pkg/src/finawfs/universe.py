"""Finite universes of objects and arrows, and classes of arrows over them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Sequence

from .core import compose, identity, iter_homs


@dataclass(frozen=True)
class Universe:
    """A finite stand-in for the ambient category.

    ``arrows`` defaults to every morphism between the listed objects, in
    object-pair order and then canonical hom order.
    """

    objects: tuple
    arrows: tuple

    @staticmethod
    def full(objects: Sequence) -> "Universe":
        objects = tuple(objects)
        arrows = tuple(h for a in objects for b in objects for h in iter_homs(a, b))
        return Universe(objects, arrows)

    @staticmethod
    def of_arrows(arrows: Sequence, objects: Sequence = ()) -> "Universe":
        """Universe spanned by explicit arrows, with identities added."""
        objs: list = list(objects)
        for f in arrows:
            for o in (f.dom, f.cod):
                if o not in objs:
                    objs.append(o)
        arrows = list(arrows)
        seen = set(arrows)
        for o in objs:
            i = identity(o)
            if i not in seen:
                arrows.append(i)
                seen.add(i)
        return Universe(tuple(objs), tuple(arrows))

    def __len__(self) -> int:
        return len(self.arrows)

    @cached_property
    def _arrow_set(self) -> frozenset:
        return frozenset(self.arrows)

    def has_identities(self) -> bool:
        return all(identity(o) in self._arrow_set for o in self.objects)

    def is_composition_closed(self) -> bool:
        by_dom: dict = {}
        for f in self.arrows:
            by_dom.setdefault(f.dom, []).append(f)
        return all(compose(g, f) in self._arrow_set for f in self.arrows for g in by_dom.get(f.cod, ()))

    def arrow_id(self, f) -> int:
        return self.arrows.index(f)


@dataclass(frozen=True)
class ClassSpec:
    """A class of arrows given by a deterministic membership predicate.

    ``provenance`` is ``"structural"`` when membership is decided by an
    invariant and ``"search"`` when it rests on an exhaustive search.
    """

    name: str
    predicate: Callable[[Any], bool] = field(compare=False)
    provenance: str = "search"
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, f) -> bool:
        hit = self._memo.get(f)
        if hit is None:
            hit = bool(self.predicate(f))
            self._memo[f] = hit
        return hit

    def members(self, universe: Universe) -> list:
        return [f for f in universe.arrows if self(f)]


def empty_class() -> ClassSpec:
    return ClassSpec("∅", lambda f: False, "structural")


def explicit_class(name: str, arrows: Sequence) -> ClassSpec:
    members = frozenset(arrows)
    return ClassSpec(name, lambda f: f in members, "structural")

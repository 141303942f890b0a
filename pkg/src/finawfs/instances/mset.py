"""Finite ``M``-sets for a finite monoid ``M``.

Elements of an ``M``-set of size ``k`` are ``0..k-1``; the action is one
table per monoid element (the unit's table is the identity).  A morphism
is an equivariant function table, and the canonical enumeration order is
lexicographic in that table.  Finite sets are ``M``-sets over the trivial
monoid, which keeps one implementation for both categories.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from ..core import ComonadDef, Coproduct, FunctorDef, check_cap
from ..errors import BoundaryMismatch, EncodingError


@dataclass(frozen=True)
class Monoid:
    names: tuple
    unit: int
    table: tuple  # table[a][b] = a*b

    def __post_init__(self):
        k = len(self.names)
        if k == 0 or len(set(self.names)) != k:
            raise EncodingError("monoid needs distinct element names")
        if not 0 <= self.unit < k:
            raise EncodingError("monoid unit out of range")
        if len(self.table) != k or any(len(r) != k for r in self.table):
            raise EncodingError("monoid table must be square")
        if any(not 0 <= v < k for r in self.table for v in r):
            raise EncodingError("monoid table entry out of range")
        u, t = self.unit, self.table
        if any(t[u][a] != a or t[a][u] != a for a in range(k)):
            raise EncodingError("monoid unit law fails")
        for a, b, c in itertools.product(range(k), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise EncodingError("monoid multiplication is not associative")

    @staticmethod
    def from_names(names, unit, table) -> "Monoid":
        names = tuple(str(x) for x in names)
        try:
            u = names.index(str(unit))
            tab = tuple(tuple(names.index(str(v)) if not isinstance(v, int) else v for v in row) for row in table)
        except (ValueError, TypeError):
            raise EncodingError("malformed monoid description") from None
        return Monoid(names, u, tab)

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def non_units(self) -> list[int]:
        return [a for a in range(self.order) if a != self.unit]

    def describe(self) -> dict:
        return {
            "elements": list(self.names),
            "unit": self.names[self.unit],
            "table": [[self.names[v] for v in row] for row in self.table],
        }


IDEMPOTENT = Monoid(("1", "e"), 0, ((0, 1), (1, 1)))
TRIVIAL = Monoid(("1",), 0, ((0,),))


@dataclass(frozen=True)
class MSetObject:
    monoid: Monoid
    size: int
    action: tuple  # action[m][x] = m·x

    def __post_init__(self):
        M = self.monoid
        if self.size < 0 or len(self.action) != M.order:
            raise EncodingError("action must have one table per monoid element")
        for t in self.action:
            if len(t) != self.size or any(not 0 <= v < self.size for v in t):
                raise EncodingError("action table out of range")
        if tuple(self.action[M.unit]) != tuple(range(self.size)):
            raise EncodingError("the unit must act as the identity")
        for a in range(M.order):
            for b in range(M.order):
                ab = M.mul(a, b)
                for x in range(self.size):
                    if self.action[a][self.action[b][x]] != self.action[ab][x]:
                        raise EncodingError("action is not compatible with the monoid multiplication")

    @staticmethod
    def make(size: int, *tables, monoid: Monoid = IDEMPOTENT) -> "MSetObject":
        """Build from the tables of the non-unit elements, in monoid order."""
        it = iter(tables)
        action = []
        for a in range(monoid.order):
            action.append(tuple(range(size)) if a == monoid.unit else tuple(next(it)))
        return MSetObject(monoid, size, tuple(action))

    @property
    def category(self) -> "MSetCategory":
        return mset_category(self.monoid)

    @property
    def e_table(self) -> tuple:
        """Table of the first non-unit monoid element (``e`` for ``{1, e}``)."""
        nu = self.monoid.non_units()
        return self.action[nu[0]] if nu else tuple(range(self.size))

    def act(self, m: int, x: int) -> int:
        return self.action[m][x]

    def elements(self) -> range:
        return range(self.size)

    def fixed_points(self, m: int) -> int:
        return sum(1 for x in range(self.size) if self.action[m][x] == x)

    def encode(self) -> str:
        if self.monoid == TRIVIAL:
            return f"set:{self.size}"
        tabs = ",".join("[" + ",".join(map(str, self.action[a])) + "]" for a in self.monoid.non_units())
        return f"mset:{{{self.size},{tabs}}}"

    def __str__(self) -> str:
        return self.encode()

    def __repr__(self) -> str:
        return f"MSetObject({self.encode()})"


class MSetMorphism:
    __slots__ = ("dom", "cod", "table", "_hash")

    def __init__(self, dom: MSetObject, cod: MSetObject, table, check: bool = True):
        if dom.monoid != cod.monoid:
            raise BoundaryMismatch("M-sets over different monoids")
        table = tuple(table)
        self.dom, self.cod, self.table = dom, cod, table
        self._hash = None
        if check:
            if len(table) != dom.size or any(not 0 <= y < cod.size for y in table):
                raise EncodingError("function table out of range")
            for m in range(dom.monoid.order):
                for x in range(dom.size):
                    if table[dom.action[m][x]] != cod.action[m][table[x]]:
                        raise EncodingError(f"table {table} is not equivariant")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def entries(self) -> tuple:
        return self.table

    def __eq__(self, other):
        if not isinstance(other, MSetMorphism):
            return NotImplemented
        return self.table == other.table and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, self.table))
        return self._hash

    def encode(self) -> dict:
        return {"dom": self.dom.encode(), "cod": self.cod.encode(), "table": list(self.table)}

    def __repr__(self) -> str:
        return f"MSetMorphism({self.dom} -> {self.cod}, {list(self.table)})"


@dataclass(frozen=True)
class MSetCategory:
    monoid: Monoid

    @property
    def name(self) -> str:
        if self.monoid == TRIVIAL:
            return "set"
        if self.monoid == IDEMPOTENT:
            return "mset"
        return "mset[" + ",".join(self.monoid.names) + "]"

    def obj(self, size: int, *tables) -> MSetObject:
        return MSetObject.make(size, *tables, monoid=self.monoid)

    def trivial(self, size: int) -> MSetObject:
        return MSetObject(self.monoid, size, tuple(tuple(range(size)) for _ in range(self.monoid.order)))

    def identity(self, a: MSetObject) -> MSetMorphism:
        return MSetMorphism(a, a, range(a.size), check=False)

    def compose(self, g: MSetMorphism, f: MSetMorphism) -> MSetMorphism:
        return MSetMorphism(f.dom, g.cod, (g.table[y] for y in f.table), check=False)

    def coproduct(self, a: MSetObject, b: MSetObject) -> Coproduct:
        k = a.size
        s = _disjoint_union(a, b)
        return Coproduct(
            s,
            MSetMorphism(a, s, range(k), check=False),
            MSetMorphism(b, s, range(k, k + b.size), check=False),
        )

    def copair(self, f: MSetMorphism, g: MSetMorphism) -> MSetMorphism:
        s = self.coproduct(f.dom, g.dom).obj
        return MSetMorphism(s, f.cod, f.table + g.table, check=False)

    def initial(self) -> MSetObject:
        return self.trivial(0)

    def initial_map(self, a: MSetObject) -> MSetMorphism:
        return MSetMorphism(self.initial(), a, (), check=False)

    def generators(self, a: MSetObject) -> list[int]:
        return list(range(a.size))

    def first_difference(self, u: MSetMorphism, v: MSetMorphism):
        for x in range(u.dom.size):
            if u.table[x] != v.table[x]:
                return x
        return None

    def elements(self, a: MSetObject):
        return range(a.size)

    def size(self, a: MSetObject) -> int:
        return a.size

    def candidate_count(self, a: MSetObject, b: MSetObject) -> int:
        return b.size**a.size

    def hom_count(self, a: MSetObject, b: MSetObject) -> int:
        return sum(1 for _ in self.solve(a, b))

    def iter_homs(self, a: MSetObject, b: MSetObject, reverse: bool = False) -> Iterator[MSetMorphism]:
        """Brute force: every function table, filtered for equivariance."""
        check_cap(self.candidate_count(a, b))
        values = range(b.size)[::-1] if reverse else range(b.size)
        for table in itertools.product(values, repeat=a.size):
            if all(
                table[a.action[m][x]] == b.action[m][table[x]]
                for m in range(self.monoid.order)
                for x in range(a.size)
            ):
                yield MSetMorphism(a, b, table, check=False)

    def solve(self, a, b, points=(), post=(), prune=None, reverse: bool = False) -> Iterator[MSetMorphism]:
        """Backtracking over elements of ``a`` in order; see :func:`finawfs.core.solve_homs`."""
        forced: dict[int, int] = {}
        for v, w in points:
            if forced.get(v, w) != w:
                return
            forced[v] = w
        for g, k in post:
            if g.dom != b or k.dom != a or k.cod != g.cod:
                raise BoundaryMismatch("post constraint has the wrong shape")
        order = range(self.monoid.order)
        values = list(range(b.size)[::-1] if reverse else range(b.size))
        # elements x' and monoid elements m with m·x' == x, used to check x
        preimages = [[(m, z) for m in order for z in range(x) if a.action[m][z] == x] for x in range(a.size)]
        table = [None] * a.size

        def ok(x: int, y: int) -> bool:
            if forced.get(x, y) != y:
                return False
            for g, k in post:
                if g.table[y] != k.table[x]:
                    return False
            for m in order:
                t = a.action[m][x]
                if t < x and table[t] != b.action[m][y]:
                    return False
                if t == x and b.action[m][y] != y:
                    return False
            for m, z in preimages[x]:
                if b.action[m][table[z]] != y:
                    return False
            return True

        def rec(x: int):
            if x == a.size:
                if prune is not None and a.size == 0 and not prune([]):
                    return
                yield MSetMorphism(a, b, tuple(table), check=False)
                return
            for y in values:
                if not ok(x, y):
                    continue
                table[x] = y
                if prune is None or prune([(z, table[z]) for z in range(x + 1)]):
                    yield from rec(x + 1)
                table[x] = None

        yield from rec(0)

    def may_embed(self, a: MSetObject, b: MSetObject) -> bool:
        """Necessary condition for ``a`` to be a retract of ``b``.

        A split mono is injective and maps fixed points of each monoid
        element to fixed points.
        """
        if a.size > b.size:
            return False
        return all(a.fixed_points(m) <= b.fixed_points(m) for m in range(self.monoid.order))

    def objects_up_to(self, max_size: int) -> list[MSetObject]:
        """Every action table (not up to isomorphism) on ``0..k-1``, ``k <= max_size``."""
        out = []
        nu = self.monoid.non_units()
        for k in range(max_size + 1):
            funcs = list(itertools.product(range(k), repeat=k))
            for tables in itertools.product(funcs, repeat=len(nu)):
                try:
                    out.append(MSetObject.make(k, *tables, monoid=self.monoid))
                except EncodingError:
                    continue
        return out


@lru_cache(maxsize=None)
def mset_category(monoid: Monoid = IDEMPOTENT) -> MSetCategory:
    return MSetCategory(monoid)


def finset_category() -> MSetCategory:
    return mset_category(TRIVIAL)


def finset(k: int) -> MSetObject:
    return finset_category().trivial(k)


# -- free-forgetful comonad -------------------------------------------------
#
# P(X) = M × X with (m, x) stored at index x·|M| + m.


# objects are immutable, and rebuilding (and re-validating) them dominates
# the naturality sweeps, so the two constructors are memoised


@lru_cache(maxsize=1 << 14)
def _disjoint_union(a: MSetObject, b: MSetObject) -> MSetObject:
    k = a.size
    action = tuple(tuple(a.action[m]) + tuple(k + y for y in b.action[m]) for m in range(a.monoid.order))
    return MSetObject(a.monoid, k + b.size, action)


@lru_cache(maxsize=1 << 14)
def free_mset(a: MSetObject) -> MSetObject:
    M = a.monoid
    k = M.order
    action = tuple(tuple(x * k + M.mul(n, m) for x in range(a.size) for m in range(k)) for n in range(k))
    return MSetObject(M, a.size * k, action)


def free_map(h: MSetMorphism) -> MSetMorphism:
    k = h.dom.monoid.order
    table = tuple(h.table[x] * k + m for x in range(h.dom.size) for m in range(k))
    return MSetMorphism(free_mset(h.dom), free_mset(h.cod), table, check=False)


def counit(a: MSetObject) -> MSetMorphism:
    """``(m, x) ↦ m·x``."""
    k = a.monoid.order
    table = tuple(a.action[m][x] for x in range(a.size) for m in range(k))
    return MSetMorphism(free_mset(a), a, table, check=False)


def comult(a: MSetObject) -> MSetMorphism:
    """``(m, x) ↦ (m, (1, x))``."""
    M = a.monoid
    k = M.order
    pa = free_mset(a)
    table = tuple((x * k + M.unit) * k + m for x in range(a.size) for m in range(k))
    return MSetMorphism(pa, free_mset(pa), table, check=False)


@lru_cache(maxsize=None)
def free_comonad(monoid: Monoid = IDEMPOTENT) -> ComonadDef:
    return ComonadDef(f"FU[{mset_category(monoid).name}]", mset_category(monoid), free_mset, free_map, counit, comult)


# -- the trivial-action functor ----------------------------------------------


@lru_cache(maxsize=None)
def trivial_action_functor(monoid: Monoid = IDEMPOTENT) -> FunctorDef:
    target = mset_category(monoid)

    def on_object(x: MSetObject) -> MSetObject:
        return target.trivial(x.size)

    def on_morphism(f: MSetMorphism) -> MSetMorphism:
        return MSetMorphism(on_object(f.dom), on_object(f.cod), f.table, check=False)

    return FunctorDef(f"trivial[{target.name}]", finset_category(), target, on_object, on_morphism)


def trivial_action(x, monoid: Monoid = IDEMPOTENT):
    """Give a finite set (or set map) the trivial ``M``-action."""
    if isinstance(x, int):
        x = finset(x)
    return trivial_action_functor(monoid)(x)


# -- predicates -------------------------------------------------------------


def canonical_free(monoid: Monoid, generators: int) -> MSetObject:
    return free_mset(mset_category(monoid).trivial(generators))


def find_mset_isomorphism(a: MSetObject, b: MSetObject) -> MSetMorphism | None:
    """First isomorphism ``a -> b`` in table order, or None."""
    if a.monoid != b.monoid or a.size != b.size:
        return None
    if any(a.fixed_points(m) != b.fixed_points(m) for m in range(a.monoid.order)):
        return None

    def injective(partial):
        images = [y for _, y in partial]
        return len(set(images)) == len(images)

    return next(a.category.solve(a, b, prune=injective), None)


def is_free_mset(x: MSetObject) -> bool:
    """True iff ``x ≅ M × S`` for some finite set ``S``."""
    k = x.monoid.order
    if x.size % k:
        return False
    free = canonical_free(x.monoid, x.size // k)
    return find_mset_isomorphism(free, x) is not None


def is_mono_mset(f: MSetMorphism) -> bool:
    return len(set(f.table)) == f.dom.size


def is_epi_mset(f: MSetMorphism) -> bool:
    return len(set(f.table)) == f.cod.size


# -- text encoding ----------------------------------------------------------

_MSET_RE = re.compile(r"^mset:\{(\d+)((?:,\[[\d,]*\])*)\}$")
_SET_RE = re.compile(r"^set:(\d+)$")


def parse_mset(text: str, monoid: Monoid = IDEMPOTENT) -> MSetObject:
    t = text.replace(" ", "")
    m = _SET_RE.match(t)
    if m:
        return finset(int(m.group(1)))
    m = _MSET_RE.match(t)
    if not m:
        raise EncodingError(f"not an M-set encoding: {text!r}")
    size = int(m.group(1))
    tables = []
    for chunk in re.findall(r"\[([\d,]*)\]", m.group(2)):
        tables.append(tuple(int(v) for v in chunk.split(",")) if chunk else ())
    if len(tables) != len(monoid.non_units()):
        raise EncodingError(f"expected {len(monoid.non_units())} action tables in {text!r}")
    return MSetObject.make(size, *tables, monoid=monoid)

"""Finite modules over ``Z/n`` for squarefree ``n``.

A module is a direct sum of cyclic factors ``Z/d`` with ``d | n`` and
``d > 1``, stored as run-lengths ``((d, count), ...)`` in ascending ``d``.
Run-lengths matter: the free-comonad towers built by the factorization
quickly reach ranks like ``6**6`` and beyond, and such objects are only
ever touched through sparse vectors.

Elements of small modules are dense tuples of residues; elements of any
module can also be given as sparse vectors ``((coord, value), ...)``.
Element ranks are lexicographic with the first coordinate most
significant.

A morphism ``⊕ Z/d_i -> ⊕ Z/e_j`` is a matrix with entries ``a_ji`` that
are multiples of ``e_j / gcd(d_i, e_j)`` in ``[0, e_j)``, stored by
(lazily computed) sparse columns.  Its canonical encoding is the
column-major tuple of entries, and all enumerations are lexicographic in
that tuple.
"""

from __future__ import annotations

import bisect
import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, prod
from typing import Callable, Iterator

from ..core import ComonadDef, Coproduct, FunctorDef, check_cap
from ..errors import BoundaryMismatch, EncodingError, UnsupportedRing
from ..linalg import rank_mod_p, solve_affine, squarefree_primes

Sparse = tuple  # tuple[tuple[int, int], ...]

# Element ranks computed in huge objects, so that the matching unrank is a
# lookup instead of a long division.  Only ever grows with values that some
# computation produced, and every entry is a pure function of its key.
_UNRANK_MEMO: dict = {}
_DENSE_LIMIT = 4096


@dataclass(frozen=True)
class ModObject:
    n: int
    runs: tuple  # ((d, count), ...), d ascending, d > 1, count > 0

    def __post_init__(self):
        last = 1
        for d, c in self.runs:
            if d <= last or self.n % d or c <= 0:
                raise EncodingError(f"non-canonical module runs {self.runs} over Z/{self.n}")
            last = d

    @staticmethod
    def of(n: int, factors) -> "ModObject":
        counts: dict[int, int] = {}
        for d in factors:
            if d <= 0 or n % d:
                raise EncodingError(f"{d} does not divide {n}")
            if d > 1:
                counts[d] = counts.get(d, 0) + 1
        return ModObject(n, tuple(sorted(counts.items())))

    @property
    def category(self) -> "ModCategory":
        return mod_category(self.n)

    @cached_property
    def rank(self) -> int:
        return sum(c for _, c in self.runs)

    @cached_property
    def _run_starts(self) -> tuple:
        out, acc = [], 0
        for _, c in self.runs:
            out.append(acc)
            acc += c
        return tuple(out)

    @cached_property
    def size(self) -> int:
        return prod(d**c for d, c in self.runs)

    @property
    def factors(self) -> tuple:
        if self.rank > 10**6:
            raise ValueError("module too large to list its factors")
        return tuple(d for d, c in self.runs for _ in range(c))

    def divisor(self, i: int) -> int:
        r = bisect.bisect_right(self._run_starts, i) - 1
        if i < 0 or i >= self.rank:
            raise IndexError(i)
        return self.runs[r][0]

    def count_of(self, d: int) -> int:
        return dict(self.runs).get(d, 0)

    def run_start(self, d: int) -> int:
        """Coordinate index where the run of divisor ``d`` starts (or would)."""
        acc = 0
        for dd, c in self.runs:
            if dd >= d:
                break
            acc += c
        return acc

    def p_rank(self, p: int) -> int:
        return sum(c for d, c in self.runs if d % p == 0)

    def is_zero(self) -> bool:
        return not self.runs

    def stride(self, i: int) -> int:
        """Number of elements spanned by one step in coordinate ``i``."""
        r = bisect.bisect_right(self._run_starts, i) - 1
        d, c = self.runs[r]
        within = self._run_starts[r] + c - 1 - i
        return d**within * self._suffix[r + 1]

    @cached_property
    def _suffix(self) -> tuple:
        out = [1]
        for d, c in reversed(self.runs):
            out.append(out[-1] * d**c)
        return tuple(reversed(out))

    # element ranks --------------------------------------------------------

    def rank_of(self, x: tuple) -> int:
        return self.rank_sparse(tuple((i, v) for i, v in enumerate(x) if v))

    def rank_sparse(self, vec: Sparse) -> int:
        k = sum(v * self.stride(i) for i, v in vec)
        if self.rank > 64 and vec:
            _UNRANK_MEMO[(self, k)] = vec
        return k

    def unrank(self, k: int) -> tuple:
        out = [0] * self.rank
        for i, v in self.unrank_sparse(k):
            out[i] = v
        return tuple(out)

    def unrank_sparse(self, k: int) -> Sparse:
        if k == 0:
            return ()
        hit = _UNRANK_MEMO.get((self, k))
        if hit is not None:
            return hit
        out = []
        i = self.rank - 1
        for d, c in reversed(self.runs):
            for _ in range(c):
                if not k:
                    break
                k, v = divmod(k, d)
                if v:
                    out.append((i, v))
                i -= 1
            if not k:
                break
        if k:
            raise IndexError("element index out of range")
        return tuple(reversed(out))

    def elements(self) -> Iterator[tuple]:
        return itertools.product(*(range(d) for d in self.factors))

    def zero(self) -> tuple:
        return (0,) * self.rank

    def encode(self) -> str:
        if self.rank <= 16:
            body = ",".join(str(d) for d in self.factors)
        else:
            body = ",".join(f"{d}^{c}" for d, c in self.runs)
        return f"zmod{self.n}:[{body}]"

    def __str__(self) -> str:
        return self.encode()

    def __repr__(self) -> str:
        return f"ModObject({self.encode()})"


def _to_sparse(x: tuple) -> Sparse:
    return tuple((i, v) for i, v in enumerate(x) if v)


class ModMorphism:
    """A module map given by (lazily computed) sparse columns."""

    __slots__ = ("dom", "cod", "_colfn", "_cols", "__weakref__")

    def __init__(self, dom: ModObject, cod: ModObject, cols=None, colfn: Callable | None = None, check: bool = True):
        if dom.n != cod.n:
            raise BoundaryMismatch("modules over different rings")
        self.dom = dom
        self.cod = cod
        if cols is not None:
            cols = tuple(tuple(c) for c in cols)
            if len(cols) != dom.rank:
                raise EncodingError("column count does not match the domain rank")
            if check:
                for i, col in enumerate(cols):
                    _check_column(dom, cod, i, col)
            self._cols = dict(enumerate(cols))
            self._colfn = None
        else:
            self._cols = {}
            self._colfn = colfn

    @staticmethod
    def from_matrix(dom: ModObject, cod: ModObject, matrix) -> "ModMorphism":
        """Build from a dense matrix whose rows index codomain coordinates."""
        if len(matrix) != cod.rank or any(len(r) != dom.rank for r in matrix):
            raise EncodingError(f"matrix shape must be {cod.rank}x{dom.rank}")
        cols = []
        for i in range(dom.rank):
            col = []
            for j in range(cod.rank):
                v = matrix[j][i] % cod.divisor(j)
                if v:
                    col.append((j, v))
            cols.append(tuple(col))
        return ModMorphism(dom, cod, cols)

    def col(self, i: int) -> Sparse:
        c = self._cols.get(i)
        if c is None:
            if self._colfn is None or not 0 <= i < self.dom.rank:
                raise IndexError(i)
            c = self._colfn(i)
            self._cols[i] = c
        return c

    def columns(self) -> tuple:
        return tuple(self.col(i) for i in range(self.dom.rank))

    def apply_sparse(self, vec: Sparse) -> Sparse:
        acc: dict[int, int] = {}
        for i, v in vec:
            for j, a in self.col(i):
                acc[j] = acc.get(j, 0) + v * a
        out = []
        for j in sorted(acc):
            r = acc[j] % self.cod.divisor(j)
            if r:
                out.append((j, r))
        return tuple(out)

    def __call__(self, x: tuple) -> tuple:
        out = [0] * self.cod.rank
        for j, v in self.apply_sparse(_to_sparse(x)):
            out[j] = v
        return tuple(out)

    def matrix(self) -> list[list[int]]:
        rows = [[0] * self.dom.rank for _ in range(self.cod.rank)]
        for i in range(self.dom.rank):
            for j, v in self.col(i):
                rows[j][i] = v
        return rows

    def entries(self) -> tuple:
        """Column-major entry tuple: the canonical enumeration key."""
        out = []
        for i in range(self.dom.rank):
            col = dict(self.col(i))
            out.extend(col.get(j, 0) for j in range(self.cod.rank))
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, ModMorphism):
            return NotImplemented
        if self is other:
            return True
        return self.dom == other.dom and self.cod == other.cod and self.columns() == other.columns()

    def __hash__(self):
        return hash((self.dom, self.cod, self.columns()))

    def encode(self) -> dict:
        return {"dom": self.dom.encode(), "cod": self.cod.encode(), "matrix": self.matrix()}

    def __repr__(self) -> str:
        if self.dom.rank <= 16 and self.cod.rank <= 16:
            return f"ModMorphism({self.dom} -> {self.cod}, {self.matrix()})"
        return f"ModMorphism({self.dom} -> {self.cod})"


def _check_column(dom: ModObject, cod: ModObject, i: int, col: Sparse) -> None:
    d = dom.divisor(i)
    last = -1
    for j, v in col:
        if j <= last or j >= cod.rank:
            raise EncodingError("malformed sparse column")
        last = j
        e = cod.divisor(j)
        if not 0 < v < e or v % (e // gcd(d, e)):
            raise EncodingError(f"entry {v} at ({j},{i}) violates the Z/{d} -> Z/{e} constraint")


# -- the category ----------------------------------------------------------


@dataclass(frozen=True)
class ModCategory:
    n: int

    def __post_init__(self):
        try:
            squarefree_primes(self.n)
        except ValueError as exc:
            raise UnsupportedRing(f"Z/{self.n}: {exc}") from None
        if self.n < 2:
            raise UnsupportedRing("modulus must be at least 2")

    @property
    def name(self) -> str:
        return f"zmod{self.n}"

    @cached_property
    def primes(self) -> tuple:
        return tuple(squarefree_primes(self.n))

    def obj(self, *factors) -> ModObject:
        return ModObject.of(self.n, factors)

    def identity(self, a: ModObject) -> ModMorphism:
        return ModMorphism(a, a, colfn=lambda i: ((i, 1),))

    def compose(self, g: ModMorphism, f: ModMorphism) -> ModMorphism:
        return ModMorphism(f.dom, g.cod, colfn=lambda i: g.apply_sparse(f.col(i)))

    def coproduct(self, a: ModObject, b: ModObject) -> Coproduct:
        counts = {}
        for d, c in a.runs + b.runs:
            counts[d] = counts.get(d, 0) + c
        s = ModObject(self.n, tuple(sorted(counts.items())))
        return Coproduct(
            s,
            ModMorphism(a, s, colfn=lambda i: ((_left_position(a, s, i), 1),)),
            ModMorphism(b, s, colfn=lambda i: ((_right_position(a, b, s, i), 1),)),
        )

    def copair(self, f: ModMorphism, g: ModMorphism) -> ModMorphism:
        a, b = f.dom, g.dom
        s = self.coproduct(a, b).obj

        def colfn(pos: int) -> Sparse:
            d = s.divisor(pos)
            k = pos - s.run_start(d)
            ca = a.count_of(d)
            if k < ca:
                return f.col(a.run_start(d) + k)
            return g.col(b.run_start(d) + k - ca)

        return ModMorphism(s, f.cod, colfn=colfn)

    def initial(self) -> ModObject:
        return ModObject(self.n, ())

    def initial_map(self, a: ModObject) -> ModMorphism:
        return ModMorphism(self.initial(), a, cols=())

    def generators(self, a: ModObject) -> list[tuple]:
        out = []
        for i in range(a.rank):
            x = [0] * a.rank
            x[i] = 1
            out.append(tuple(x))
        return out

    def first_difference(self, u: ModMorphism, v: ModMorphism):
        for i in range(u.dom.rank):
            if u.col(i) != v.col(i):
                return self.generators(u.dom)[i] if u.dom.rank <= _DENSE_LIMIT else i
        return None

    def elements(self, a: ModObject):
        return a.elements()

    def size(self, a: ModObject) -> int:
        return a.size

    # hom-sets -------------------------------------------------------------

    def _entry_steps(self, a: ModObject, b: ModObject) -> list[tuple[int, int]]:
        """``(modulus, step)`` per column-major entry."""
        out = []
        for i in range(a.rank):
            d = a.divisor(i)
            for j in range(b.rank):
                e = b.divisor(j)
                out.append((e, e // gcd(d, e)))
        return out

    def hom_count(self, a: ModObject, b: ModObject) -> int:
        return prod(gcd(d, e) ** (c * k) for d, c in a.runs for e, k in b.runs)

    def iter_homs(self, a: ModObject, b: ModObject, reverse: bool = False) -> Iterator[ModMorphism]:
        check_cap(self.hom_count(a, b))
        steps = self._entry_steps(a, b)
        ranges = [range(0, e, s) for e, s in steps]
        if reverse:
            ranges = [r[::-1] for r in ranges]
        rows = b.rank
        for entries in itertools.product(*ranges):
            cols = []
            for i in range(a.rank):
                chunk = entries[i * rows : (i + 1) * rows]
                cols.append(tuple((j, v) for j, v in enumerate(chunk) if v))
            yield ModMorphism(a, b, cols, check=False)

    def solve(self, a, b, points=(), post=(), prune=None, reverse: bool = False) -> Iterator[ModMorphism]:
        """Constrained hom search; see :func:`finawfs.core.solve_homs`.

        One linear system per prime ``p | n`` in the variables
        ``a_ji mod p``; the depth-first search fixes entries in canonical
        order, consulting the echelon kernel so that every branch it enters
        extends to a full solution.
        """
        rows = b.rank
        var_index: dict[int, dict[tuple[int, int], int]] = {}
        for p in self.primes:
            idx: dict[tuple[int, int], int] = {}
            for i in range(a.rank):
                if a.divisor(i) % p:
                    continue
                for j in range(rows):
                    if b.divisor(j) % p == 0:
                        idx[(i, j)] = len(idx)
            var_index[p] = idx

        spaces = {}
        for p in self.primes:
            idx = var_index[p]
            eqs: list[tuple[dict[int, int], int]] = []
            for v, w in points:
                if len(v) != a.rank or len(w) != b.rank:
                    raise BoundaryMismatch("point constraint has the wrong shape")
                for j in range(rows):
                    if b.divisor(j) % p:
                        continue
                    coeffs = {}
                    for i, vi in enumerate(v):
                        if vi % p and (i, j) in idx:
                            coeffs[idx[(i, j)]] = vi
                    eqs.append((coeffs, w[j]))
            for g, k in post:
                if g.dom != b or k.dom != a or k.cod != g.cod:
                    raise BoundaryMismatch("post constraint has the wrong shape")
                c = g.cod
                grows: dict[int, list[tuple[int, int]]] = {}
                for j in range(rows):
                    if b.divisor(j) % p:
                        continue
                    for l, val in g.col(j):
                        if val % p:
                            grows.setdefault(l, []).append((j, val))
                for i in range(a.rank):
                    if a.divisor(i) % p:
                        continue
                    kcol = dict(k.col(i))
                    for l in range(c.rank):
                        if c.divisor(l) % p:
                            continue
                        coeffs = {idx[(i, j)]: val for j, val in grows.get(l, ())}
                        eqs.append((coeffs, kcol.get(l, 0)))
            space = solve_affine(p, len(idx), eqs)
            if space is None:
                return
            spaces[p] = space

        steps = self._entry_steps(a, b)
        entry_primes = []
        for i in range(a.rank):
            for j in range(rows):
                ps = [(p, var_index[p][(i, j)]) for p in self.primes if (i, j) in var_index[p]]
                entry_primes.append(ps)
        nentries = len(steps)
        gens = self.generators(a) if prune is not None else None

        def column_of(entries, i):
            return tuple((j, v) for j, v in enumerate(entries[i * rows : (i + 1) * rows]) if v)

        def values_at(pos):
            e, step = steps[pos]
            vs = range(0, e, step)
            return iter(vs[::-1] if reverse else vs)

        start = {p: s.x0 for p, s in spaces.items()}
        if nentries == 0:
            if prune is None or rows or prune([(g, ()) for g in gens]):
                yield ModMorphism(a, b, [() for _ in range(a.rank)], check=False)
            return
        # explicit stack: one value iterator and one solver state per fixed entry
        iters = [values_at(0)]
        states = [start]
        entries: list[int] = []
        while iters:
            pos = len(iters) - 1
            value = next(iters[-1], None)
            if value is None:
                iters.pop()
                states.pop()
                if entries:
                    entries.pop()
                continue
            new_state = states[-1]
            ok = True
            for p, var in entry_primes[pos]:
                fixed = spaces[p].fix(new_state[p], var, value)
                if fixed is None:
                    ok = False
                    break
                if fixed is not new_state[p]:
                    new_state = dict(new_state)
                    new_state[p] = fixed
            if not ok:
                continue
            entries.append(value)
            if prune is not None and (pos + 1) % rows == 0:
                ncols = (pos + 1) // rows
                partial = [(gens[i], tuple(entries[i * rows : (i + 1) * rows])) for i in range(ncols)]
                if not prune(partial):
                    entries.pop()
                    continue
            if pos + 1 == nentries:
                yield ModMorphism(a, b, [column_of(entries, i) for i in range(a.rank)], check=False)
                entries.pop()
                continue
            iters.append(values_at(pos + 1))
            states.append(new_state)

    def may_embed(self, a: ModObject, b: ModObject) -> bool:
        """Necessary condition for ``a`` to be a retract of ``b``: ``p``-ranks."""
        return all(a.p_rank(p) <= b.p_rank(p) for p in self.primes)

    def objects_up_to(self, max_size: int) -> list[ModObject]:
        divisors = [d for d in range(2, self.n + 1) if self.n % d == 0]
        found = []

        def rec(start, size, acc):
            found.append(ModObject.of(self.n, acc))
            for k in range(start, len(divisors)):
                d = divisors[k]
                if size * d <= max_size:
                    rec(k, size * d, acc + [d])

        rec(0, 1, [])
        return sorted(found, key=lambda m: (m.size, m.factors))

    # structure ------------------------------------------------------------

    def p_matrix(self, f: ModMorphism, p: int) -> list[list[int]]:
        """The ``F_p`` component of ``f`` (rows: p-coordinates of the codomain)."""
        rows = [j for j in range(f.cod.rank) if f.cod.divisor(j) % p == 0]
        cols = [i for i in range(f.dom.rank) if f.dom.divisor(i) % p == 0]
        rpos = {j: r for r, j in enumerate(rows)}
        out = [[0] * len(cols) for _ in rows]
        for c, i in enumerate(cols):
            for j, v in f.col(i):
                if j in rpos:
                    out[rpos[j]][c] = v % p
        return out

    def p_rank_of_map(self, f: ModMorphism, p: int) -> int:
        return rank_mod_p(self.p_matrix(f, p), p)


def _left_position(a: ModObject, s: ModObject, i: int) -> int:
    d = a.divisor(i)
    return s.run_start(d) + (i - a.run_start(d))


def _right_position(a: ModObject, b: ModObject, s: ModObject, i: int) -> int:
    d = b.divisor(i)
    return s.run_start(d) + a.count_of(d) + (i - b.run_start(d))


@lru_cache(maxsize=None)
def mod_category(n: int) -> ModCategory:
    return ModCategory(n)


# -- free-forgetful comonad -------------------------------------------------


def free_module(a: ModObject) -> ModObject:
    """``FU(a)``: the free module on the underlying set of ``a``."""
    return ModObject(a.n, ((a.n, a.size),))


def free_map(h: ModMorphism) -> ModMorphism:
    a, b = h.dom, h.cod
    pa, pb = free_module(a), free_module(b)

    def colfn(k: int) -> Sparse:
        return ((b.rank_sparse(h.apply_sparse(a.unrank_sparse(k))), 1),)

    return ModMorphism(pa, pb, colfn=colfn)


def counit(a: ModObject) -> ModMorphism:
    """Evaluation ``FU(a) -> a``: the basis vector ``[x]`` goes to ``x``."""
    return ModMorphism(free_module(a), a, colfn=a.unrank_sparse)


def comult(a: ModObject) -> ModMorphism:
    """``FU(a) -> FUFU(a)``: the basis vector ``[x]`` goes to ``[[x]]``."""
    pa = free_module(a)
    ppa = free_module(pa)
    return ModMorphism(pa, ppa, colfn=lambda k: ((pa.rank_sparse(((k, 1),)), 1),))


@lru_cache(maxsize=None)
def free_comonad(n: int = 6) -> ComonadDef:
    return ComonadDef(f"FU[zmod{n}]", mod_category(n), free_module, free_map, counit, comult)


# -- tensor functors ---------------------------------------------------------


@lru_cache(maxsize=None)
def tensor_functor(p: int, n: int = 6) -> FunctorDef:
    """``Z/p ⊗ (-)`` on ``Z/n``-modules, landing again in ``Z/n``-modules."""
    cat = mod_category(n)
    if p not in cat.primes:
        raise UnsupportedRing(f"{p} is not a prime divisor of {n}")

    def on_object(a: ModObject) -> ModObject:
        return ModObject(n, ((p, a.p_rank(p)),) if a.p_rank(p) else ())

    def new_index(a: ModObject, i: int) -> int:
        return sum(c for d, c in a.runs if d % p == 0 and d < a.divisor(i)) + (i - a.run_start(a.divisor(i)))

    def on_morphism(f: ModMorphism) -> ModMorphism:
        a, b = f.dom, f.cod
        va, vb = on_object(a), on_object(b)
        old = [i for i in range(a.rank) if a.divisor(i) % p == 0]

        def colfn(k: int) -> Sparse:
            out = []
            for j, v in f.col(old[k]):
                if b.divisor(j) % p == 0 and v % p:
                    out.append((new_index(b, j), v % p))
            return tuple(sorted(out))

        return ModMorphism(va, vb, colfn=colfn)

    return FunctorDef(f"Z/{p}⊗-[zmod{n}]", cat, cat, on_object, on_morphism)


def tensor_z2(x):
    """``Z/2 ⊗_{Z/6} (-)`` on an object or morphism of ``Z/6``-modules."""
    n = x.n if isinstance(x, ModObject) else x.dom.n
    if n != 6:
        raise UnsupportedRing(f"tensor_z2 is defined over Z/6, not Z/{n}; use tensor_functor(2, n)")
    return tensor_functor(2, 6)(x)


# -- predicates -------------------------------------------------------------


def is_free_module(a: ModObject) -> bool:
    """True iff ``a ≅ (Z/n)^k``: every prime of ``n`` occurs equally often."""
    ranks = {a.p_rank(p) for p in a.category.primes}
    return len(ranks) == 1


def is_projective_module(a: ModObject) -> bool:
    """True iff the counit ``FU(a) -> a`` admits a module section."""
    cat = a.category
    eps = counit(a)
    return next(cat.solve(a, eps.dom, post=[(eps, cat.identity(a))]), None) is not None


def cokernel(f: ModMorphism) -> ModObject:
    """``cod f / im f`` in invariant-factor form ``d_1 | d_2 | ...``."""
    cat = f.dom.category
    quotient_ranks = {p: f.cod.p_rank(p) - cat.p_rank_of_map(f, p) for p in cat.primes}
    return module_from_p_ranks(f.dom.n, quotient_ranks)


def module_from_p_ranks(n: int, ranks: dict[int, int]) -> ModObject:
    """The invariant-factor module with the given ``p``-ranks."""
    top = max(ranks.values(), default=0)
    factors = []
    for k in range(top):
        d = prod(p for p, r in ranks.items() if r >= top - k)
        factors.append(d)
    return ModObject.of(n, factors)


def is_mono_module(f: ModMorphism) -> bool:
    if f.dom.size <= _DENSE_LIMIT and f.cod.rank <= _DENSE_LIMIT:
        images = {f(x) for x in f.dom.elements()}
        return len(images) == f.dom.size
    cat = f.dom.category
    return all(cat.p_rank_of_map(f, p) == f.dom.p_rank(p) for p in cat.primes)


def is_epi_module(f: ModMorphism) -> bool:
    if f.dom.size <= _DENSE_LIMIT and f.cod.size <= _DENSE_LIMIT:
        images = {f(x) for x in f.dom.elements()}
        return len(images) == f.cod.size
    cat = f.dom.category
    return all(cat.p_rank_of_map(f, p) == f.cod.p_rank(p) for p in cat.primes)


# -- text encoding ----------------------------------------------------------

_MOD_RE = re.compile(r"^zmod(\d+):\[(.*)\]$")


def parse_module(text: str) -> ModObject:
    m = _MOD_RE.match(text.replace(" ", ""))
    if not m:
        raise EncodingError(f"not a module encoding: {text!r}")
    n = int(m.group(1))
    try:
        mod_category(n)
    except UnsupportedRing as exc:
        raise EncodingError(str(exc)) from None
    factors: list[int] = []
    body = m.group(2)
    if body:
        for tok in body.split(","):
            if "^" in tok:
                d, c = tok.split("^")
                if not d.isdigit() or not c.isdigit():
                    raise EncodingError(f"bad factor {tok!r}")
                factors.extend([int(d)] * int(c))
            elif tok.isdigit():
                factors.append(int(tok))
            else:
                raise EncodingError(f"bad factor {tok!r}")
    canon = ModObject.of(n, factors)
    if list(canon.factors) != [d for d in factors if d != 1] or 1 in factors:
        raise EncodingError(f"module factors must be listed in ascending canonical form: {text!r}")
    return canon

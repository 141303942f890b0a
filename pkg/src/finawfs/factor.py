"""The functorial factorization generated by a comonad ``P``.

For ``f: X -> Y`` it factors ``f`` through ``Ef = X + PY`` as::

    X --Lf = ι₁--> X + PY --Rf = [f, υ_Y]--> Y

with structure maps

    δ_f = 1_X + P(ι₂)·Δ_Y : Ef -> ELf = X + P(Ef)
    μ_f = [1_Ef, ι₂]       : ERf = Ef + PY -> Ef

computed by these formulas only.  Search-based fillers live in
:mod:`finawfs.analysis`, so formula/search agreement is something the
tests check rather than assume.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable

from .core import (
    ArrowSquare,
    ComonadDef,
    compose,
    copair,
    coproduct,
    coproduct_map,
    first,
    first_difference,
    identity,
    iter_squares,
    solve_homs,
)
from .errors import DomainMismatch, NonCommutingSquare


@dataclass(frozen=True, eq=False)
class Factorization:
    """``(Lf, Ef, Rf)`` with lazily computed ``δ_f`` and ``μ_f``."""

    f: Any
    P: ComonadDef = field(repr=False)

    @cached_property
    def _cop(self):
        return coproduct(self.f.dom, self.P.obj(self.f.cod))

    @property
    def E(self):
        return self._cop.obj

    @property
    def L(self):
        return self._cop.inj1

    @property
    def inj2(self):
        """``ι₂ : PY -> Ef``."""
        return self._cop.inj2

    @cached_property
    def R(self):
        return copair(self.f, self.P.counit(self.f.cod))

    @cached_property
    def delta(self):
        Lf = self.L
        E_Lf = factorize(Lf, self.P)
        inner = compose(self.P.map(self.inj2), self.P.comult(self.f.cod))
        out = coproduct_map(identity(self.f.dom), inner)
        assert out.cod == E_Lf.E
        return out

    @cached_property
    def mu(self):
        return copair(identity(self.E), self.inj2)


_CACHE: dict = {}


def factorize(f, P: ComonadDef) -> Factorization:
    """The comonad-generated factorization of ``f`` (memoized per ``(f, P)``)."""
    if f.dom.category != P.category:
        raise DomainMismatch(f"{P.name} lives on {P.category.name}")
    key = (f, P.name)
    hit = _CACHE.get(key)
    if hit is None:
        hit = Factorization(f, P)
        _CACHE[key] = hit
    return hit


def delta(t: Factorization):
    return t.delta


def mu(t: Factorization):
    return t.mu


def e_on_square(sq: ArrowSquare, P: ComonadDef):
    """``E(h, k) = h + P(k) : Ef -> Eg``."""
    if compose(sq.g, sq.h) != compose(sq.k, sq.f):
        raise NonCommutingSquare("E is only defined on commuting squares")
    tg = factorize(sq.g, P)
    return copair(compose(tg.L, sq.h), compose(tg.inj2, P.map(sq.k)))


def E(f, g, h, k, P: ComonadDef):
    """Shorthand for ``E(h, k)`` on the square ``(h, k): f -> g``."""
    return e_on_square(ArrowSquare(f, g, h, k), P)


# -- P-split epis ------------------------------------------------------------


@dataclass(frozen=True)
class PSplitEpi:
    p: Any
    i: Any

    def holds(self, P: ComonadDef) -> bool:
        return compose(self.p, self.i) == P.counit(self.p.cod)


def find_p_section(p, P: ComonadDef):
    """First ``i: PY -> X`` with ``p ∘ i = υ_Y``, or None."""
    Y = p.cod
    eps = P.counit(Y)
    return first(solve_homs(P.obj(Y), p.dom, post=[(p, eps)]))


def find_p_split(p, P: ComonadDef) -> PSplitEpi | None:
    i = find_p_section(p, P)
    return None if i is None else PSplitEpi(p, i)


def find_p_coalgebra(X, P: ComonadDef):
    """First ``c: X -> PX`` with ``υ∘c = 1`` and ``Δ∘c = P(c)∘c``, or None."""
    eps = P.counit(X)
    comult = P.comult(X)
    for c in solve_homs(X, P.obj(X), post=[(eps, identity(X))]):
        if compose(comult, c) == compose(P.map(c), c):
            return c
    return None


# -- the law suite -----------------------------------------------------------


@dataclass(frozen=True)
class LawResult:
    law: str
    subject: int
    passed: bool
    counterexample: Any = None
    detail: str = ""


@dataclass
class LawReport:
    """Per-law pass counts plus the failing results (passes are not kept)."""

    counts: dict[str, list[int]]  # law -> [passes, total]
    failing: list[LawResult]

    @property
    def passed(self) -> bool:
        return not self.failing

    def failures(self) -> list[LawResult]:
        return list(self.failing)

    def failed_laws(self) -> set[str]:
        return {r.law for r in self.failing}

    def laws(self) -> list[str]:
        return sorted(self.counts)

    def summary(self) -> dict[str, tuple[int, int]]:
        """law -> (passes, total)."""
        return {k: (v[0], v[1]) for k, v in sorted(self.counts.items())}


AWFS_LAWS = (
    "factor",
    "L-square",
    "R-square",
    "delta-L",
    "delta-counit-RL",
    "delta-counit-E",
    "delta-coassoc",
    "mu-unit-LR",
    "mu-unit-E",
    "mu-R",
    "mu-assoc",
    "delta-natural",
    "mu-natural",
)


def check_awfs_laws(
    arrows: Iterable,
    P: ComonadDef,
    *,
    squares: bool = True,
    delta_fn: Callable[[Factorization], Any] | None = None,
    mu_fn: Callable[[Factorization], Any] | None = None,
) -> LawReport:
    """Check every law of the comonad-generated factorization on ``arrows``.

    ``arrows`` may be a :class:`~finawfs.universe.Universe` or any sequence
    of morphisms.  ``delta_fn``/``mu_fn`` replace the structure maps (for
    negative controls).  With ``squares`` the naturality of ``E``, ``δ``
    and ``μ`` is checked on every commuting square between the arrows.
    """
    arrows = list(getattr(arrows, "arrows", arrows))
    dfn = delta_fn or (lambda t: t.delta)
    mfn = mu_fn or (lambda t: t.mu)
    counts: dict[str, list[int]] = {}
    failing: list[LawResult] = []

    def record(law, idx, both):
        # ``both`` builds the two sides lazily so that a corrupted structure
        # map that breaks a square is reported instead of raised
        c = counts.setdefault(law, [0, 0])
        c[1] += 1
        try:
            lhs, rhs = both()
        except NonCommutingSquare as exc:
            failing.append(LawResult(law, idx, False, None, f"ill-formed: {exc}"))
            return
        diff = first_difference(lhs, rhs)
        if diff is None:
            c[0] += 1
        else:
            failing.append(LawResult(law, idx, False, diff))

    for idx, f in enumerate(arrows):
        t = factorize(f, P)
        X, Y = f.dom, f.cod
        d, m = dfn(t), mfn(t)
        tL, tR = factorize(t.L, P), factorize(t.R, P)
        record("factor", idx, lambda: (compose(t.R, t.L), f))
        record("delta-L", idx, lambda: (compose(d, t.L), tL.L))
        record("delta-counit-RL", idx, lambda: (compose(tL.R, d), identity(t.E)))
        record("delta-counit-E", idx, lambda: (compose(E(t.L, f, identity(X), t.R, P), d), identity(t.E)))
        record(
            "delta-coassoc",
            idx,
            lambda: (compose(dfn(tL), d), compose(E(t.L, tL.L, identity(X), d, P), d)),
        )
        record("mu-unit-LR", idx, lambda: (compose(m, tR.L), identity(t.E)))
        record("mu-unit-E", idx, lambda: (compose(m, E(f, t.R, t.L, identity(Y), P)), identity(t.E)))
        record("mu-R", idx, lambda: (compose(t.R, m), tR.R))
        record(
            "mu-assoc",
            idx,
            lambda: (compose(m, mfn(tR)), compose(m, E(tR.R, t.R, m, identity(Y), P))),
        )

    if squares:
        for i1, f in enumerate(arrows):
            tf = factorize(f, P)
            for i2, g in enumerate(arrows):
                tg = factorize(g, P)
                for sq in iter_squares(f, g):
                    idx = (i1, i2)
                    Ehk = e_on_square(sq, P)
                    record("L-square", idx, lambda: (compose(tg.L, sq.h), compose(Ehk, tf.L)))
                    record("R-square", idx, lambda: (compose(tg.R, Ehk), compose(sq.k, tf.R)))
                    record(
                        "delta-natural",
                        idx,
                        lambda: (compose(dfn(tg), Ehk), compose(E(tf.L, tg.L, sq.h, Ehk, P), dfn(tf))),
                    )
                    record(
                        "mu-natural",
                        idx,
                        lambda: (compose(mfn(tg), E(tf.R, tg.R, Ehk, sq.k, P)), compose(Ehk, mfn(tf))),
                    )

    failing.sort(key=lambda r: (r.law, r.subject if isinstance(r.subject, tuple) else (r.subject,)))
    return LawReport(counts, failing)


# -- negative controls ---------------------------------------------------------


def _corrupting_endo(t: Factorization):
    """``P(z)`` for the first non-identity endomorphism ``z`` of ``Y``, or None.

    Searching over ``Y`` rather than ``PY`` keeps this cheap on free towers.
    """
    Y = t.f.cod
    one = identity(Y)
    z = first(u for u in solve_homs(Y, Y) if u != one)
    return None if z is None else t.P.map(z)


def corrupted_delta(t: Factorization):
    """``δ_f ∘ (1_X + κ)`` with ``κ = P(z)`` for a non-identity ``z: Y -> Y``.

    A well-typed but wrong comultiplication, for exercising the law suite.
    Equals ``δ_f`` when ``Y`` has no other endomorphism.
    """
    kappa = _corrupting_endo(t)
    if kappa is None:
        return t.delta
    return compose(t.delta, coproduct_map(identity(t.f.dom), kappa))


def corrupted_mu(t: Factorization):
    """``[1_Ef, ι₂ ∘ κ]`` with ``κ`` as in :func:`corrupted_delta`."""
    kappa = _corrupting_endo(t)
    if kappa is None:
        return t.mu
    return copair(identity(t.E), compose(t.inj2, kappa))

"""Exhaustive law sweeps over a finite universe.

Each sweep returns a :class:`CheckOutcome`: a pass/fail flag, the failing
subjects (canonically ordered, truncated to ``max_witnesses``) and a small
dictionary of counts.  The command-line runner serialises these directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .analysis import exists_l_membership, find_filler, find_l_coalgebra, is_retract_of
from .cloven import (
    LeftCleavage,
    cleavage_from_retract,
    compose_cloven,
    delta_cleavage,
    extend_cleavage,
    extend_cleavage_formula,
    find_cleavage_left,
    find_cleavage_right,
    identity_cleavage,
    is_cloven_morphism,
    is_l_coalgebra,
    is_r_algebra,
    iter_cleavages_left,
    lift_via_cleavage,
    mu_cleavage,
    retract_of_L_witness,
)
from .core import ArrowSquare, ComonadDef, comonad_law_failures, compose, identity, iter_squares
from .factor import E, check_awfs_laws, corrupted_delta, corrupted_mu, factorize, find_p_section
from .universe import Universe

MAX_WITNESSES = 10


@dataclass
class CheckOutcome:
    id: str
    passed: bool
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


def encode_any(x) -> Any:
    """JSON-ready encoding of an object, morphism, or tuple of them."""
    if isinstance(x, (tuple, list)):
        return [encode_any(v) for v in x]
    if hasattr(x, "encode"):
        return x.encode()
    return x


def _outcome(id: str, failures: list, details: dict | None = None, max_witnesses: int = MAX_WITNESSES) -> CheckOutcome:
    d = dict(details or {})
    d["failures"] = len(failures)
    return CheckOutcome(id, not failures, failures[:max_witnesses], d)


# -- awfs suite ------------------------------------------------------------------


def awfs_law_check(U: Universe, P: ComonadDef, *, squares: bool = True, corrupt: str | None = None) -> CheckOutcome:
    dfn = corrupted_delta if corrupt == "delta" else None
    mfn = corrupted_mu if corrupt == "mu" else None
    report = check_awfs_laws(U, P, squares=squares, delta_fn=dfn, mu_fn=mfn)
    failures = []
    for r in report.failures():
        if isinstance(r.subject, tuple):
            subject = {"square": [U.arrows[r.subject[0]].encode(), U.arrows[r.subject[1]].encode()]}
        else:
            subject = {"arrow": U.arrows[r.subject].encode()}
        item = {"law": r.law, **subject, "counterexample": encode_any(r.counterexample)}
        if r.detail:
            item["detail"] = r.detail
        failures.append(item)
    summary = {law: list(v) for law, v in report.summary().items()}
    # the first failure of each law, so that every failing law is named
    firsts: dict = {}
    for item in failures:
        firsts.setdefault(item["law"], item)
    out = _outcome(
        "awfs-laws",
        [firsts[k] for k in sorted(firsts)],
        {"laws": summary, "failed_laws": sorted(report.failed_laws()), "squares": squares},
    )
    out.details["failures"] = len(failures)
    return out


def comonad_check(U: Universe, P: ComonadDef) -> CheckOutcome:
    failures = [{"law": law, "subject": encode_any(s)} for law, s in comonad_law_failures(P, U.objects, U.arrows)]
    return _outcome("comonad-laws", failures, {"objects": len(U.objects), "arrows": len(U.arrows)})


def free_structure_check(U: Universe, P: ComonadDef) -> CheckOutcome:
    """``(Lf, δ_f)`` is a coalgebra and ``(Rf, μ_f)`` an algebra for every ``f``."""
    failures = []
    for f in U.arrows:
        c = delta_cleavage(f, P)
        if not (c.is_valid() and is_l_coalgebra(c)):
            failures.append({"structure": "delta", "arrow": f.encode()})
        a = mu_cleavage(f, P)
        if not (a.is_valid() and is_r_algebra(a)):
            failures.append({"structure": "mu", "arrow": f.encode()})
    return _outcome("free-structures", failures, {"arrows": len(U.arrows)})


# -- class characterisations --------------------------------------------------------


def right_class_check(U: Universe, P: ComonadDef, is_epi: Callable) -> CheckOutcome:
    """Right cleavage exists iff a ``P``-section exists iff the map is epi."""
    failures = []
    count = 0
    for g in U.arrows:
        rc = find_cleavage_right(g, P) is not None
        ps = find_p_section(g, P) is not None
        ep = bool(is_epi(g))
        count += rc
        if not rc == ps == ep:
            failures.append({"arrow": g.encode(), "right_cleavage": rc, "p_section": ps, "epi": ep})
    return _outcome("right-cleavage-iff-p-section-iff-epi", failures, {"arrows": len(U.arrows), "cleaved": count})


def left_mono_check(U: Universe, P: ComonadDef, is_mono: Callable) -> CheckOutcome:
    failures = []
    count = 0
    for f in U.arrows:
        lc = find_cleavage_left(f, P) is not None
        mo = bool(is_mono(f))
        count += lc
        if lc != mo:
            failures.append({"arrow": f.encode(), "left_cleavage": lc, "mono": mo})
    return _outcome("left-cleavage-iff-mono", failures, {"arrows": len(U.arrows), "cleaved": count})


def retract_argument_check(U: Universe, P: ComonadDef) -> CheckOutcome:
    """``f`` has a left cleavage iff it is a retract of ``Lf``, in both directions."""
    failures = []
    for f in U.arrows:
        c = find_cleavage_left(f, P)
        Lf = factorize(f, P).L
        w = is_retract_of(f, Lf)
        if (c is None) != (w is None):
            failures.append({"arrow": f.encode(), "cleavage": c is not None, "retract": w is not None})
            continue
        if c is None:
            continue
        if not retract_of_L_witness(c).holds(f, Lf):
            failures.append({"arrow": f.encode(), "direction": "cleavage-to-retract"})
        if not cleavage_from_retract(f, w, P).is_valid():
            failures.append({"arrow": f.encode(), "direction": "retract-to-cleavage"})
    return _outcome("retract-argument", failures, {"arrows": len(U.arrows)})


def identity_cleavage_check(U: Universe, P: ComonadDef, *, cleavages: str = "all") -> CheckOutcome:
    """``1_A`` has exactly one cleavage, ``L1_A``; and ``E(1_A, f)∘L1_A = s∘f``.

    The square identity is checked for every cleavage ``s`` on each arrow
    (``cleavages="all"``) or for the first one only (``"first"``).
    """
    failures = []
    for A in U.objects:
        cs = list(iter_cleavages_left(identity(A), P))
        if len(cs) != 1 or cs[0] != identity_cleavage(A, P):
            failures.append({"object": A.encode(), "cleavages": len(cs)})
    lifted = 0
    for f in U.arrows:
        A = f.dom
        L1 = factorize(identity(A), P).L
        for c in iter_cleavages_left(f, P):
            lhs = compose(E(identity(A), f, identity(A), f, P), L1)
            if lhs != compose(c.s, f):
                failures.append({"arrow": f.encode(), "cleavage": c.s.encode()})
            lifted += 1
            if cleavages != "all":
                break
    return _outcome(
        "identity-cleavage", failures, {"objects": len(U.objects), "cleavages_checked": lifted, "mode": cleavages}
    )


# -- the cloven calculus ------------------------------------------------------------


def _cleavages(U: Universe, P: ComonadDef, mode: str) -> list[LeftCleavage]:
    out = []
    for f in U.arrows:
        if mode == "all":
            out.extend(iter_cleavages_left(f, P))
        else:
            c = find_cleavage_left(f, P)
            if c is not None:
                out.append(c)
    return out


def cloven_calculus_check(U: Universe, P: ComonadDef, *, cleavages: str = "all") -> CheckOutcome:
    """Associativity, units, interchange and extension of cloven composition.

    ``cleavages="all"`` sweeps every cleavage on every arrow; ``"first"``
    uses the first cleavage of each arrow (for universes where the full
    enumeration is too large).
    """
    cs = _cleavages(U, P, cleavages)
    by_dom: dict = {}
    for c in cs:
        by_dom.setdefault(c.f.dom, []).append(c)
    failures: list = []
    pairs = triples = squares = 0

    for c in cs:
        if not c.is_valid():
            failures.append({"law": "cleavage", "arrow": c.f.encode()})
        for side, u in (("left", compose_cloven(identity_cleavage(c.f.dom, P), c)),
                        ("right", compose_cloven(c, identity_cleavage(c.f.cod, P)))):
            if u != c:
                failures.append({"law": f"unit-{side}", "arrow": c.f.encode()})

    composites = {}
    for c1 in cs:
        for c2 in by_dom.get(c1.f.cod, ()):
            pairs += 1
            u = compose_cloven(c1, c2)
            composites[(c1, c2)] = u
            if not u.is_valid():
                failures.append({"law": "compose-valid", "arrows": [c1.f.encode(), c2.f.encode()]})
            # (1, g): (f, s) -> (gf, s·t) is a cloven morphism
            sq = ArrowSquare(c1.f, u.f, identity(c1.f.dom), c2.f)
            if not is_cloven_morphism(sq, c1, u):
                failures.append({"law": "compose-cloven-unit", "arrows": [c1.f.encode(), c2.f.encode()]})
            ext = extend_cleavage(c1, c2.f)
            if not ext.is_valid() or not is_cloven_morphism(sq, c1, ext):
                failures.append({"law": "extend", "arrows": [c1.f.encode(), c2.f.encode()]})
            alt = extend_cleavage_formula(c1, c2)
            if not alt.is_valid() or not is_cloven_morphism(sq, c1, alt):
                failures.append({"law": "extend-formula", "arrows": [c1.f.encode(), c2.f.encode()]})
            for c3 in by_dom.get(c2.f.cod, ()):
                triples += 1
                a = compose_cloven(u, c3)
                b = compose_cloven(c1, compose_cloven(c2, c3))
                if a != b:
                    failures.append({"law": "associativity", "arrows": [c1.f.encode(), c2.f.encode(), c3.f.encode()]})

    # interchange: cloven (h, k): f -> f' and (k, l): g -> g' give a cloven
    # (h, l) between the composites
    outs: dict = {}  # c -> [(d, cloven square c -> d)]
    by_h: dict = {}  # (c, d) -> {h: [cloven squares c -> d with that h]}
    for c in cs:
        row = outs.setdefault(c, [])
        for d in cs:
            for sq in iter_squares(c.f, d.f):
                if is_cloven_morphism(sq, c, d):
                    row.append((d, sq))
                    by_h.setdefault((c, d), {}).setdefault(sq.h, []).append(sq)

    for (c1, c2), u in composites.items():
        for d1, sq1 in outs[c1]:
            for d2 in by_dom.get(d1.f.cod, ()):
                v = composites[(d1, d2)]
                for sq2 in by_h.get((c2, d2), {}).get(sq1.k, ()):
                    squares += 1
                    outer = ArrowSquare(u.f, v.f, sq1.h, sq2.k)
                    if not is_cloven_morphism(outer, u, v):
                        failures.append(
                            {"law": "interchange", "arrows": [c1.f.encode(), c2.f.encode(), d1.f.encode(), d2.f.encode()]}
                        )
    # vertical composition of cloven squares
    for c in cs:
        for d, sq1 in outs[c]:
            for e, sq2 in outs[d]:
                if not is_cloven_morphism(sq1.then(sq2), c, e):
                    failures.append({"law": "vertical", "arrows": [c.f.encode(), d.f.encode(), e.f.encode()]})
    return _outcome(
        "cloven-calculus",
        failures,
        {"cleavages": len(cs), "pairs": pairs, "triples": triples, "interchange_squares": squares, "mode": cleavages},
    )


def lift_triangle_check(U: Universe, P: ComonadDef) -> CheckOutcome:
    """``lift_via_cleavage`` fills every square between cleaved maps, and ``find_filler`` agrees."""
    lefts = [c for c in (find_cleavage_left(f, P) for f in U.arrows) if c is not None]
    rights = [r for r in (find_cleavage_right(g, P) for g in U.arrows) if r is not None]
    failures = []
    count = 0
    for c in lefts:
        for r in rights:
            for sq in iter_squares(c.f, r.g):
                count += 1
                try:
                    lift_via_cleavage(c, r, sq)
                except AssertionError:
                    failures.append({"square": [c.f.encode(), r.g.encode()], "h": sq.h.encode(), "k": sq.k.encode()})
                    continue
                if find_filler(sq) is None:
                    failures.append({"square": [c.f.encode(), r.g.encode()], "search": "no filler"})
    return _outcome("lift-triangles", failures, {"squares": count})


def coalgebra_gap(f, P: ComonadDef) -> CheckOutcome:
    """``f`` has a left cleavage but no cleavage is a coalgebra (exhaustive)."""
    cs = list(iter_cleavages_left(f, P))
    coalg = [c for c in cs if is_l_coalgebra(c)]
    passed = bool(cs) and not coalg
    return CheckOutcome(
        "cleavage-coalgebra-gap",
        passed,
        [] if passed else [c.s.encode() for c in coalg],
        {"arrow": f.encode(), "cleavages": len(cs), "coalgebras": len(coalg), "cleavage": cs[0].s.encode() if cs else None},
    )


def structural_vs_search(arrows: Sequence, P: ComonadDef) -> CheckOutcome:
    """For arrows out of the initial object: freeness test against coalgebra search."""
    failures = []
    for f in arrows:
        a = exists_l_membership(f, P, method="structural")
        b = find_l_coalgebra(f, P) is not None
        if a != b:
            failures.append({"arrow": f.encode(), "structural": a, "search": b})
    return _outcome("structural-vs-search", failures, {"arrows": len(arrows)})

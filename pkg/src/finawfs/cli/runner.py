"""Turn scenarios into reports.

Every check runs sequentially in a fixed order, so a report depends only
on the scenario, the search order and the package version.
"""

from __future__ import annotations

import time
from typing import Callable

from .. import suites
from ..analysis import eq12_compare, find_filler
from ..core import ArrowSquare, identity, identity_functor, iter_squares, limits
from ..errors import FinAWFSError
from ..factor import factorize
from ..instances import mod as md
from ..instances import mset as ms
from ..suites import CheckOutcome
from ..universe import Universe
from .report import CheckResult
from .scenario import Scenario, ScenarioError


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled

    def run(self, fn: Callable[[], CheckOutcome]) -> CheckResult:
        t0 = time.perf_counter()
        o = fn()
        dt = time.perf_counter() - t0 if self.enabled else None
        return CheckResult(o.id, "pass" if o.passed else "fail", o.witnesses, o.details, dt)


def _comonad(s: Scenario):
    if s.category.kind == "zmod":
        return md.mod_category(s.category.modulus), md.free_comonad(s.category.modulus)
    return ms.mset_category(s.category.monoid), ms.free_comonad(s.category.monoid)


def _objects(s: Scenario, cat):
    objs = s.universe_objects()
    return objs if objs is not None else cat.objects_up_to(s.max_size)


def _arrow_label(f) -> str:
    return f"{f.dom.encode()} -> {f.cod.encode()}"


def run_scenario(s: Scenario, *, order: str = "forward", timing: bool = False) -> list[CheckResult]:
    clock = _Clock(timing)
    with limits(order=order):
        return _DISPATCH[s.check](s, clock)


# -- the comparison of lifted classes -------------------------------------------


def _functor_and_source(s: Scenario):
    cat, P = _comonad(s)
    name = s.params["functor"]
    if name == "tensor":
        return md.tensor_functor(2, 6), cat, P
    if name == "trivial":
        return ms.trivial_action_functor(s.category.monoid), ms.finset_category(), P
    return identity_functor(cat), cat, P


def _comparison(s: Scenario, arrows_mode: str = "from-initial"):
    V, source, P = _functor_and_source(s)
    objs = _objects(s, source)
    if arrows_mode == "all":
        arrows = list(Universe.full(objs).arrows)
    else:
        arrows = [source.initial_map(M) for M in objs]
    return V, P, eq12_compare(V, arrows, P)


def _inclusion(rep) -> CheckOutcome:
    return suites._outcome(
        "inclusion",
        [{"arrow": _arrow_label(f)} for f in rep.violations]
        + [{"arrow": _arrow_label(f), "image_witness": False} for f, ok in rep.inclusion_checks if not ok],
        {
            "arrows": len(rep.rows),
            "lhs": sum(r.in_lhs for r in rep.rows),
            "rhs": sum(r.in_rhs for r in rep.rows),
            "witness_images_checked": len(rep.inclusion_checks),
        },
    )


def _strict_list(rep) -> list[str]:
    return [_arrow_label(f) for f in rep.strict_witnesses]


def _run_counterexample(s: Scenario, clock: _Clock) -> list[CheckResult]:
    V, P, rep = _comparison(s)
    results = [clock.run(lambda: _inclusion(rep))]
    strict = _strict_list(rep)
    if s.params["functor"] == "identity":
        results.append(
            clock.run(lambda: CheckOutcome("strictness", not strict, strict, {"expected": "none", "strict": len(strict)}))
        )
        return results
    if s.check == "counterexample-zmod6":
        target = md.mod_category(6).initial_map(md.ModObject.of(6, [6]))
        in_sweep = any(r.arrow == target for r in rep.rows)
        ok = in_sweep and target in rep.strict_witnesses
        results.append(
            clock.run(
                lambda: CheckOutcome(
                    "strictness",
                    ok,
                    strict,
                    {"expected": _arrow_label(target), "strict": len(strict), "expected_found": ok},
                )
            )
        )

        def characterization():
            bad = []
            for r in rep.rows:
                M = r.arrow.cod
                predicted = M.p_rank(2) == 0
                if r.in_lhs != predicted:
                    bad.append({"object": M.encode(), "in_lhs": r.in_lhs, "no_2_torsion": predicted})
            return suites._outcome(
                "characterization",
                bad,
                {"rule": "0 -> M is on the left iff M has no 2-torsion", "objects": len(rep.rows)},
            )

        results.append(clock.run(characterization))
        return results

    # M-sets under the trivial action: every arrow on the right, only the
    # empty one on the left
    def rhs_all():
        bad = [{"arrow": _arrow_label(r.arrow)} for r in rep.rows if not r.in_rhs]
        return suites._outcome("rhs-contains-all", bad, {"arrows": len(rep.rows)})

    def lhs_only_empty():
        bad = [
            {"arrow": _arrow_label(r.arrow), "in_lhs": r.in_lhs}
            for r in rep.rows
            if r.in_lhs != (r.arrow.cod.size == 0)
        ]
        return suites._outcome("lhs-only-empty", bad, {"arrows": len(rep.rows)})

    results.append(clock.run(rhs_all))
    results.append(clock.run(lhs_only_empty))
    results.append(
        clock.run(lambda: CheckOutcome("strictness", True, strict, {"strict": len(strict)}))
    )
    return results


def _run_eq12(s: Scenario, clock: _Clock) -> list[CheckResult]:
    V, P, rep = _comparison(s, s.params["arrows"])
    inc = clock.run(lambda: _inclusion(rep))
    strict = _strict_list(rep)
    return [inc, CheckResult("strict-witnesses", "pass", strict, {"functor": V.name, "strict": len(strict)})]


# -- law suites -------------------------------------------------------------------


def _universe(s: Scenario):
    cat, P = _comonad(s)
    return Universe.full(_objects(s, cat)), P


def _run_awfs(s: Scenario, clock: _Clock) -> list[CheckResult]:
    U, P = _universe(s)
    return [
        clock.run(lambda: suites.awfs_law_check(U, P, squares=s.params["squares"], corrupt=s.params["corrupt"])),
        clock.run(lambda: suites.comonad_check(U, P)),
        clock.run(lambda: suites.free_structure_check(U, P)),
    ]


def _run_cloven(s: Scenario, clock: _Clock) -> list[CheckResult]:
    U, P = _universe(s)
    zmod = s.category.kind == "zmod"
    epi = md.is_epi_module if zmod else ms.is_epi_mset
    out = [
        clock.run(lambda: suites.right_class_check(U, P, epi)),
    ]
    if zmod:
        out.append(clock.run(lambda: suites.left_mono_check(U, P, md.is_mono_module)))
    out += [
        clock.run(lambda: suites.retract_argument_check(U, P)),
        # cheap even where the pair sweep below is not, so always exhaustive
        clock.run(lambda: suites.identity_cleavage_check(U, P, cleavages="all")),
        clock.run(lambda: suites.cloven_calculus_check(U, P, cleavages=s.params["cleavages"])),
        clock.run(lambda: suites.lift_triangle_check(U, P)),
    ]
    if not zmod and s.category.monoid == ms.IDEMPOTENT:
        cat = ms.mset_category(ms.IDEMPOTENT)
        out.append(clock.run(lambda: suites.coalgebra_gap(cat.initial_map(cat.trivial(1)), P)))
    return out


# -- lifting queries ----------------------------------------------------------------


def _parse_arrow(s: Scenario, d, what: str):
    if d is None:
        raise ScenarioError(f"lift query needs {what!r}")
    try:
        return s.category.parse_morphism(d)
    except FinAWFSError as exc:
        raise ScenarioError(f"{what}: {exc}") from None


def _query_square(s: Scenario) -> ArrowSquare:
    q = s.params["query"]
    if q == "cleavage-square":
        _, P = _comonad(s)
        f = _parse_arrow(s, s.params["arrow"], "arrow")
        t = factorize(f, P)
        return ArrowSquare(f, t.R, t.L, identity(f.cod))
    sq = s.params["square"]
    if not isinstance(sq, dict):
        raise ScenarioError("filler query needs a 'square' with f, g, h, k")
    f, g, h, k = (_parse_arrow(s, sq.get(x), f"square.{x}") for x in "fghk")
    try:
        return ArrowSquare(f, g, h, k)
    except FinAWFSError as exc:
        raise ScenarioError(f"square: {exc}") from None


def prepare_lift(s: Scenario):
    """Parse every morphism of a lift query up front (so bad input fails before any work)."""
    q = s.params["query"]
    if q in ("filler", "cleavage-square"):
        return _query_square(s)
    arrow = _parse_arrow(s, s.params["arrow"], "arrow")
    cls = s.params["class"]
    if not isinstance(cls, list) or not cls:
        raise ScenarioError(f"{q} query needs a non-empty 'class' list")
    return arrow, [_parse_arrow(s, d, f"class[{i}]") for i, d in enumerate(cls)]


def _run_lift(s: Scenario, clock: _Clock) -> list[CheckResult]:
    q = s.params["query"]
    prepared = prepare_lift(s)
    if q in ("filler", "cleavage-square"):
        sq = prepared

        def answer():
            d = find_filler(sq)
            # an absence claim is re-derived by the opposite sweep
            d_rev = find_filler(sq, reverse=True)
            agree = (d is None) == (d_rev is None)
            details = {"query": q, "answer": "filler" if d is not None else "no filler", "orders_agree": agree}
            if d is not None:
                details["filler"] = d.encode()
            else:
                details["certificate"] = "exhaustive search in both enumeration orders"
            return CheckOutcome("lift-query", agree, [], details)

        return [clock.run(answer)]

    arrow, cls = prepared

    def lifting():
        failing = None
        total = 0
        for other in cls:
            pair = (arrow, other) if q == "llp" else (other, arrow)
            for sq in iter_squares(*pair):
                total += 1
                if find_filler(sq) is None:
                    failing = {"f": sq.f.encode(), "g": sq.g.encode(), "h": sq.h.encode(), "k": sq.k.encode()}
                    break
            if failing:
                break
        details = {"query": q, "answer": failing is None, "squares": total}
        if failing:
            details["unfillable_square"] = failing
        return CheckOutcome("lift-query", True, [], details)

    return [clock.run(lifting)]


_DISPATCH = {
    "counterexample-zmod6": _run_counterexample,
    "counterexample-mset": _run_counterexample,
    "eq12": _run_eq12,
    "awfs-laws": _run_awfs,
    "cloven-laws": _run_cloven,
    "lift-query": _run_lift,
}

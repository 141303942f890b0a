"""``finawfs`` command line.

Exit codes: 0 when the verdict is PASS (or a query was answered), 1 when
it is FAIL, 2 on usage, parse or encoding errors (no report is written).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from ..errors import FinAWFSError
from .report import Report, render
from .runner import prepare_lift, run_scenario
from .scenario import Scenario, ScenarioError, default_law_size, emit_scenario, parse_scenario, scenario_from_dict

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scenario", metavar="PATH", help="read the scenario from a JSON file")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--seed-order", choices=("forward", "reverse"), default="forward", help="enumeration order")
    p.add_argument("--max-size", type=int, metavar="N", help="largest object size in the swept universe")
    p.add_argument("--timing", action="store_true", help="record wall-clock seconds per check")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finawfs", description="Exhaustive checks of comonad-generated factorizations.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one of the two counterexample sweeps")
    vsub = verify.add_subparsers(dest="target", required=True)
    for name in ("zmod6", "mset"):
        v = vsub.add_parser(name)
        _common(v)
        v.add_argument("--identity-functor", action="store_true", help="debug: replace V by the identity")
        if name == "mset":
            v.add_argument("--monoid", metavar="JSON", help='e.g. {"elements":["1","e"],"unit":"1","table":[["1","e"],["e","e"]]}')

    laws = sub.add_parser("laws", help="run the law suites")
    _common(laws)
    laws.add_argument("--category", choices=("zmod6", "mset"), default="mset")
    laws.add_argument("--monoid", metavar="JSON")
    laws.add_argument("--suite", choices=("awfs", "cloven", "all"))
    laws.add_argument("--deep", action="store_true", help="M-sets with up to 3 elements (tens of minutes); modules stay at 6")
    laws.add_argument("--corrupt", choices=("delta", "mu"), help="negative control: corrupt a structure map")
    laws.add_argument("--no-squares", action="store_true", help="skip the naturality squares")

    lift = sub.add_parser("lift", help="answer a lifting query from a scenario file")
    _common(lift)

    eq = sub.add_parser("eq12", help="compare the two lifted classes")
    _common(eq)
    eq.add_argument("--category", choices=("zmod6", "mset"), default="zmod6")
    eq.add_argument("--monoid", metavar="JSON")
    eq.add_argument("--functor", choices=("tensor", "trivial", "identity"))
    eq.add_argument("--all-arrows", action="store_true", help="sweep every arrow, not only those out of the initial object")
    return parser


def _load(path: str) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read scenario: {exc}") from None
    return parse_scenario(text)


def _category(name: str, monoid: str | None) -> dict:
    if name == "zmod6":
        if monoid is not None:
            raise UsageError("--monoid only applies to mset")
        return {"kind": "zmod", "modulus": 6}
    d: dict = {"kind": "mset"}
    if monoid is not None:
        try:
            d["monoid"] = json.loads(monoid)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"--monoid is not valid JSON: {exc}") from None
    return d


def _with_size(s: Scenario, size: int | None) -> Scenario:
    return s if size is None else scenario_from_dict({**s.emit(), "universe": {"max_size": size, "objects": None}})


def scenarios_for(args) -> list[Scenario]:
    cmd = args.command
    if cmd == "verify":
        check = f"counterexample-{args.target}"
        if args.scenario:
            s = _load(args.scenario)
            if s.check != check:
                raise UsageError(f"scenario runs {s.check!r}, expected {check!r}")
        else:
            params = {"functor": "identity"} if args.identity_functor else {}
            if args.target == "zmod6":
                cat = _category("zmod6", None)
            else:
                cat = _category("mset", args.monoid)
            s = scenario_from_dict({"check": check, "category": cat, "params": params})
        if args.identity_functor and s.params["functor"] != "identity":
            s = replace(s, params={**s.params, "functor": "identity"})
        return [_with_size(s, args.max_size)]

    if cmd == "lift":
        if not args.scenario:
            raise UsageError("lift needs --scenario PATH")
        s = _load(args.scenario)
        if s.check != "lift-query":
            raise UsageError(f"scenario runs {s.check!r}, expected 'lift-query'")
        prepare_lift(s)
        return [s]

    if cmd == "eq12":
        if args.scenario:
            s = _load(args.scenario)
            if s.check != "eq12":
                raise UsageError(f"scenario runs {s.check!r}, expected 'eq12'")
        else:
            params = {"arrows": "all" if args.all_arrows else "from-initial"}
            if args.functor:
                params["functor"] = args.functor
            s = scenario_from_dict({"check": "eq12", "category": _category(args.category, args.monoid), "params": params})
        return [_with_size(s, args.max_size)]

    # laws
    if args.scenario:
        base = _load(args.scenario)
        if base.check not in ("awfs-laws", "cloven-laws"):
            raise UsageError(f"scenario runs {base.check!r}, expected a law suite")
        kinds = {"awfs": ["awfs-laws"], "cloven": ["cloven-laws"], "all": ["awfs-laws", "cloven-laws"]}.get(
            args.suite, [base.check]
        )
        out = []
        for k in kinds:
            if k == base.check:
                s = base
            else:
                d = base.emit()
                s = scenario_from_dict({**d, "check": k, "params": {}})
            out.append(_with_size(s, args.max_size))
        return out
    cat = _category(args.category, args.monoid)
    size = args.max_size if args.max_size is not None else default_law_size(cat["kind"], args.deep)
    kinds = {"awfs": ["awfs-laws"], "cloven": ["cloven-laws"]}.get(args.suite or "all", ["awfs-laws", "cloven-laws"])
    out = []
    for k in kinds:
        params: dict = {}
        if k == "awfs-laws":
            params = {"squares": not args.no_squares, "corrupt": args.corrupt}
        out.append(scenario_from_dict({"check": k, "category": cat, "universe": {"max_size": size}, "params": params}))
    return out


def _command_label(args) -> str:
    return f"verify {args.target}" if args.command == "verify" else args.command


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    if args.max_size is not None and args.max_size < 0:
        parser.error("--max-size must be non-negative")
    try:
        scenarios = scenarios_for(args)
    except (UsageError, ScenarioError, FinAWFSError) as exc:
        print(f"finawfs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    checks = []
    for s in scenarios:
        checks.extend(run_scenario(s, order=args.seed_order, timing=args.timing))
    report = Report(_command_label(args), [s.emit() for s in scenarios], checks)
    text = render(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


def run() -> None:
    sys.exit(main())


__all__ = ["build_parser", "emit_scenario", "main", "run", "scenarios_for"]

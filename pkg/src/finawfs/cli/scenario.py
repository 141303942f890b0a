"""Scenario files: what to check, over which category and universe.

A scenario is a JSON document (field names frozen in ``docs/schema.md``)::

    {
      "format": "finawfs-scenario/1",
      "check": "awfs-laws",
      "category": {"kind": "mset", "monoid": {...}},
      "universe": {"max_size": 2, "objects": null},
      "params": {"squares": true, "corrupt": null}
    }

:func:`parse_scenario` fills every optional field with its default, so
``parse_scenario(emit_scenario(s)) == s`` for every parsed ``s``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from ..errors import EncodingError, FinAWFSError
from ..instances import mod as md
from ..instances import mset as ms

FORMAT = "finawfs-scenario/1"

CHECKS = ("counterexample-zmod6", "counterexample-mset", "awfs-laws", "cloven-laws", "lift-query", "eq12")

_DEFAULT_SIZE = {
    "counterexample-zmod6": 36,
    "counterexample-mset": 4,
    "awfs-laws": None,  # per category, see default_law_size
    "cloven-laws": None,
    "lift-query": 0,
    "eq12": None,
}

_PARAMS: dict[str, dict[str, tuple]] = {
    # name -> (default, allowed values or a type)
    "counterexample-zmod6": {"functor": ("tensor", ("tensor", "identity"))},
    "counterexample-mset": {"functor": ("trivial", ("trivial", "identity"))},
    "awfs-laws": {"squares": (True, bool), "corrupt": (None, (None, "delta", "mu"))},
    "cloven-laws": {"cleavages": (None, (None, "all", "first"))},
    "lift-query": {
        "query": ("filler", ("filler", "llp", "rlp", "cleavage-square")),
        "square": (None, dict),
        "arrow": (None, dict),
        "class": (None, list),
    },
    "eq12": {"functor": (None, (None, "tensor", "identity", "trivial")), "arrows": ("from-initial", ("from-initial", "all"))},
}


class ScenarioError(FinAWFSError, ValueError):
    """A scenario document is malformed."""


@dataclass(frozen=True)
class CategorySpec:
    kind: str  # "zmod" or "mset"
    modulus: int | None = None
    monoid: ms.Monoid | None = None

    @staticmethod
    def parse(d: Any) -> "CategorySpec":
        if not isinstance(d, dict) or "kind" not in d:
            raise ScenarioError("category must be an object with a 'kind'")
        kind = d["kind"]
        if kind == "zmod":
            n = d.get("modulus", 6)
            if not isinstance(n, int) or isinstance(n, bool):
                raise ScenarioError("modulus must be an integer")
            try:
                md.mod_category(n)
            except ValueError as exc:
                raise ScenarioError(str(exc)) from None
            _only(d, {"kind", "modulus"}, "category")
            return CategorySpec("zmod", modulus=n)
        if kind == "mset":
            _only(d, {"kind", "monoid"}, "category")
            return CategorySpec("mset", monoid=parse_monoid(d.get("monoid")))
        raise ScenarioError(f"unknown category kind {kind!r}")

    def emit(self) -> dict:
        if self.kind == "zmod":
            return {"kind": "zmod", "modulus": self.modulus}
        return {"kind": "mset", "monoid": self.monoid.describe()}

    def parse_object(self, text: str):
        if not isinstance(text, str):
            raise EncodingError(f"object encodings are strings, got {text!r}")
        if self.kind == "zmod":
            obj = md.parse_module(text)
            if obj.n != self.modulus:
                raise EncodingError(f"{text!r} is not over Z/{self.modulus}")
            return obj
        return ms.parse_mset(text, self.monoid)

    def parse_morphism(self, d: Any):
        if not isinstance(d, dict) or "dom" not in d or "cod" not in d:
            raise EncodingError("a morphism is an object with 'dom' and 'cod'")
        dom, cod = self.parse_object(d["dom"]), self.parse_object(d["cod"])
        if self.kind == "zmod":
            m = d.get("matrix")
            if not isinstance(m, list) or not all(isinstance(r, list) and all(_is_int(v) for v in r) for r in m):
                raise EncodingError("a module map needs an integer 'matrix'")
            if any(not 0 <= v < cod.divisor(j) for j, r in enumerate(m) for v in r):
                raise EncodingError("matrix entries must be least non-negative residues")
            return md.ModMorphism.from_matrix(dom, cod, m)
        t = d.get("table")
        if not isinstance(t, list) or not all(_is_int(v) for v in t):
            raise EncodingError("an M-set map needs an integer 'table'")
        return ms.MSetMorphism(dom, cod, t)


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _only(d: dict, keys: set, where: str) -> None:
    extra = sorted(set(d) - keys)
    if extra:
        raise ScenarioError(f"unknown field(s) in {where}: {', '.join(extra)}")


def parse_monoid(d: Any) -> ms.Monoid:
    """``{"elements": [...], "unit": ..., "table": [[...]]}``; defaults to ``{1, e}``."""
    if d is None:
        return ms.IDEMPOTENT
    if not isinstance(d, dict) or set(d) != {"elements", "unit", "table"}:
        raise ScenarioError("monoid must have exactly 'elements', 'unit' and 'table'")
    names, table = d["elements"], d["table"]
    if not isinstance(names, list) or not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise ScenarioError("monoid elements and table must be lists")
    if any(isinstance(v, int) for r in table for v in r):
        raise ScenarioError("monoid table entries are element names")
    try:
        return ms.Monoid.from_names(names, d["unit"], table)
    except EncodingError as exc:
        raise ScenarioError(f"malformed monoid: {exc}") from None


def default_law_size(kind: str, deep: bool = False) -> int:
    # modules stop at 6 either way: the next size adds (Z/2)^3, whose free
    # module has 6^8 elements, and the free module on that is out of reach
    if kind == "zmod":
        return 6
    return 3 if deep else 2


@dataclass(frozen=True)
class Scenario:
    check: str
    category: CategorySpec
    max_size: int
    objects: tuple | None = None
    params: dict = field(default_factory=dict, hash=False)

    def emit(self) -> dict:
        return {
            "format": FORMAT,
            "check": self.check,
            "category": self.category.emit(),
            "universe": {"max_size": self.max_size, "objects": list(self.objects) if self.objects is not None else None},
            "params": dict(self.params),
        }

    def universe_objects(self):
        """Parsed explicit objects, in file order, or None."""
        if self.objects is None:
            return None
        return [self.category.parse_object(o) for o in self.objects]


def _params(check: str, raw: Any) -> dict:
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ScenarioError("params must be an object")
    spec = _PARAMS[check]
    _only(raw, set(spec), f"params of {check}")
    out = {}
    for name, (default, allowed) in spec.items():
        v = raw.get(name, default)
        if isinstance(allowed, tuple):
            if v not in allowed:
                raise ScenarioError(f"param {name!r} must be one of {list(allowed)}")
        elif v is not None and (not isinstance(v, allowed) or (allowed is int and isinstance(v, bool))):
            raise ScenarioError(f"param {name!r} must be of type {allowed.__name__}")
        out[name] = v
    return out


def scenario_from_dict(d: Any) -> Scenario:
    if not isinstance(d, dict):
        raise ScenarioError("a scenario is a JSON object")
    _only(d, {"format", "check", "category", "universe", "params"}, "scenario")
    if d.get("format", FORMAT) != FORMAT:
        raise ScenarioError(f"unsupported format {d.get('format')!r}")
    check = d.get("check")
    if check not in CHECKS:
        raise ScenarioError(f"check must be one of {list(CHECKS)}")
    cat = CategorySpec.parse(d.get("category"))
    uni = d.get("universe") or {}
    if not isinstance(uni, dict):
        raise ScenarioError("universe must be an object")
    _only(uni, {"max_size", "objects"}, "universe")
    size = uni.get("max_size")
    if size is None:
        size = _DEFAULT_SIZE[check]
        if size is None:
            size = default_law_size(cat.kind) if check != "eq12" else (36 if cat.kind == "zmod" else 4)
    if not _is_int(size) or size < 0:
        raise ScenarioError("max_size must be a non-negative integer")
    objs = uni.get("objects")
    if objs is not None:
        if not isinstance(objs, list) or not all(isinstance(o, str) for o in objs):
            raise ScenarioError("universe objects must be a list of encodings")
        objs = tuple(objs)
    params = _params(check, d.get("params"))
    if check == "eq12" and params["functor"] is None:
        params["functor"] = "tensor" if cat.kind == "zmod" else "trivial"
    if check == "cloven-laws" and params["cleavages"] is None:
        params["cleavages"] = "first" if cat.kind == "zmod" else "all"
    s = Scenario(check, cat, size, objs, params)
    _validate(s)
    return s


def _validate(s: Scenario) -> None:
    if s.check == "counterexample-zmod6" and (s.category.kind != "zmod" or s.category.modulus != 6):
        raise ScenarioError("counterexample-zmod6 runs over zmod with modulus 6")
    if s.check == "counterexample-zmod6" and s.max_size < 6:
        raise ScenarioError("counterexample-zmod6 needs max_size >= 6")
    if s.check == "counterexample-mset" and s.category.kind != "mset":
        raise ScenarioError("counterexample-mset runs over an mset category")
    if s.check == "counterexample-mset" and s.max_size < 1:
        raise ScenarioError("counterexample-mset needs max_size >= 1")
    if s.check == "eq12":
        f = s.params["functor"]
        if f == "tensor" and (s.category.kind != "zmod" or s.category.modulus != 6):
            raise ScenarioError("the tensor functor needs zmod with modulus 6")
        if f == "trivial" and s.category.kind != "mset":
            raise ScenarioError("the trivial-action functor needs an mset category")
    try:
        s.universe_objects()
    except EncodingError as exc:
        raise ScenarioError(str(exc)) from None


def parse_scenario(text: str) -> Scenario:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"not valid JSON: {exc}") from None
    return scenario_from_dict(d)


def emit_scenario(s: Scenario) -> str:
    return json.dumps(s.emit(), indent=2, sort_keys=True) + "\n"

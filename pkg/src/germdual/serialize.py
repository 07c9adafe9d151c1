"""JSON wire format.

Rationals travel as reduced ``"p/q"`` strings (a bare integer ``"p"`` is
also accepted), never as floats. Every object is checked for unknown keys
and every error names the JSON path where it happened. Files are wrapped
in a manifest::

    {"schema_version": 1, "kind": "germ", "payload": {...}}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd

from .errors import GermDualError
from .functions import CandidateGlobal, LineFunc, SimpleFunc
from .geometry import Box, Figure2D, Interval, Set1D
from .germs import Germ, LineRule, RawGermTable, RestrictedGerm

SCHEMA_VERSION = 1
_RAT = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class ParseError(GermDualError, ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# -- encoding ---------------------------------------------------------------


def rat_out(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def interval_out(iv: Interval) -> dict:
    return {"lo": rat_out(iv.lo), "hi": rat_out(iv.hi), "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed}


def set1d_out(s: Set1D) -> dict:
    return {"parts": [interval_out(iv) for iv in s.parts]}


def box_out(b: Box) -> dict:
    return {"x": interval_out(b.x), "y": interval_out(b.y)}


def figure_out(A: Figure2D) -> dict:
    return {"boxes": [box_out(b) for b in A.boxes]}


def simple_func_out(f: SimpleFunc) -> dict:
    return {"terms": [{"coeff": rat_out(c), "figure": figure_out(fig)} for c, fig in f.terms]}


def line_func_out(w: LineFunc) -> dict:
    out = {
        "breaks": [rat_out(b) for b in w.breaks],
        "pieces": [{"a": rat_out(a), "b": rat_out(b)} for a, b in w.pieces],
    }
    if w.points:
        out["points"] = [{"at": rat_out(t), "value": rat_out(v)} for t, v in w.points]
    return out


def line_rule_out(r: LineRule) -> dict:
    return {
        "breaks": [rat_out(b) for b in r.breaks],
        "pieces": [dict(zip(("a0", "a1", "b0", "b1"), map(rat_out, p))) for p in r.pieces],
    }


def _lines_out(items) -> list:
    return [{"at": rat_out(s), "fn": line_func_out(fn)} for s, fn in items]


def germ_out(G: Germ) -> dict:
    return {
        "vertical": {"default": line_rule_out(G.vertical), "exceptions": _lines_out(G.vertical_exceptions)},
        "horizontal": {"default": line_rule_out(G.horizontal), "exceptions": _lines_out(G.horizontal_exceptions)},
    }


def restricted_out(R: RestrictedGerm) -> dict:
    return {"vertical": _lines_out(R.vertical), "horizontal": _lines_out(R.horizontal)}


def table_out(T: RawGermTable) -> dict:
    return {"entries": [{"set": figure_out(A), "germ": restricted_out(R)} for A, R in T.entries]}


def candidate_out(g: CandidateGlobal) -> dict:
    return {
        "cells": [
            {"box": box_out(box), "a": rat_out(a), "b": rat_out(b), "c": rat_out(c)} for box, (a, b, c) in g.cells
        ],
        "overrides": [{"orientation": o, "at": rat_out(s), "fn": line_func_out(fn)} for (o, s), fn in g.overrides],
    }


def battery_out(figs) -> list:
    return [figure_out(A) for A in figs]


# -- decoding ---------------------------------------------------------------


def _obj(obj, path: str, required: tuple, optional: tuple = ()) -> dict:
    if not isinstance(obj, dict):
        raise ParseError(path, f"expected an object, got {type(obj).__name__}")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise ParseError(path, f"unknown field(s) {sorted(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise ParseError(path, f"missing field(s) {missing}")
    return obj


def _list(obj, path: str) -> list:
    if not isinstance(obj, list):
        raise ParseError(path, f"expected a list, got {type(obj).__name__}")
    return obj


def _bool(obj, path: str) -> bool:
    if not isinstance(obj, bool):
        raise ParseError(path, "expected true or false")
    return obj


def rat_in(obj, path: str = "$") -> Fraction:
    if not isinstance(obj, str):
        raise ParseError(path, f"rational must be a \"p/q\" string, got {obj!r}")
    m = _RAT.match(obj.strip())
    if not m:
        raise ParseError(path, f"malformed rational {obj!r}")
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) is not None else 1
    if q == 0:
        raise ParseError(path, f"zero denominator in {obj!r}")
    if gcd(p, q) != 1 and not (p == 0 and q == 1):
        raise ParseError(path, f"rational {obj!r} is not reduced")
    return Fraction(p, q)


def _unit_rat(obj, path: str) -> Fraction:
    r = rat_in(obj, path)
    if not 0 <= r <= 1:
        raise ParseError(path, f"{r} lies outside [0, 1]")
    return r


def interval_in(obj, path: str = "$") -> Interval:
    o = _obj(obj, path, ("lo", "hi"), ("lo_closed", "hi_closed"))
    lo = _unit_rat(o["lo"], f"{path}.lo")
    hi = _unit_rat(o["hi"], f"{path}.hi")
    lc = _bool(o.get("lo_closed", True), f"{path}.lo_closed")
    hc = _bool(o.get("hi_closed", True), f"{path}.hi_closed")
    try:
        return Interval(lo, hi, lc, hc)
    except ValueError as exc:
        raise ParseError(path, str(exc)) from None


def set1d_in(obj, path: str = "$") -> Set1D:
    o = _obj(obj, path, ("parts",))
    return Set1D.union_of(interval_in(p, f"{path}.parts[{i}]") for i, p in enumerate(_list(o["parts"], f"{path}.parts")))


def box_in(obj, path: str) -> Box:
    o = _obj(obj, path, ("x", "y"))
    return Box(interval_in(o["x"], f"{path}.x"), interval_in(o["y"], f"{path}.y"))


def figure_in(obj, path: str = "$") -> Figure2D:
    o = _obj(obj, path, ("boxes",))
    return Figure2D(tuple(box_in(b, f"{path}.boxes[{i}]") for i, b in enumerate(_list(o["boxes"], f"{path}.boxes"))))


def simple_func_in(obj, path: str = "$") -> SimpleFunc:
    o = _obj(obj, path, ("terms",))
    terms = []
    for i, t in enumerate(_list(o["terms"], f"{path}.terms")):
        p = f"{path}.terms[{i}]"
        t = _obj(t, p, ("coeff", "figure"))
        terms.append((rat_in(t["coeff"], f"{p}.coeff"), figure_in(t["figure"], f"{p}.figure")))
    return SimpleFunc(tuple(terms))


def _breaks_in(obj, path: str) -> tuple:
    return tuple(_unit_rat(b, f"{path}[{i}]") for i, b in enumerate(_list(obj, path)))


def line_func_in(obj, path: str = "$") -> LineFunc:
    o = _obj(obj, path, ("pieces",), ("breaks", "points"))
    breaks = _breaks_in(o.get("breaks", []), f"{path}.breaks")
    pieces = []
    for i, p in enumerate(_list(o["pieces"], f"{path}.pieces")):
        pp = _obj(p, f"{path}.pieces[{i}]", ("a", "b"))
        pieces.append((rat_in(pp["a"], f"{path}.pieces[{i}].a"), rat_in(pp["b"], f"{path}.pieces[{i}].b")))
    points = []
    for i, p in enumerate(_list(o.get("points", []), f"{path}.points")):
        pp = _obj(p, f"{path}.points[{i}]", ("at", "value"))
        points.append((_unit_rat(pp["at"], f"{path}.points[{i}].at"), rat_in(pp["value"], f"{path}.points[{i}].value")))
    try:
        return LineFunc(breaks, tuple(pieces), tuple(points))
    except ValueError as exc:
        raise ParseError(path, str(exc)) from None


def line_rule_in(obj, path: str = "$") -> LineRule:
    o = _obj(obj, path, ("pieces",), ("breaks",))
    breaks = _breaks_in(o.get("breaks", []), f"{path}.breaks")
    pieces = []
    for i, p in enumerate(_list(o["pieces"], f"{path}.pieces")):
        pp = _obj(p, f"{path}.pieces[{i}]", (), ("a0", "a1", "b0", "b1"))
        pieces.append(tuple(rat_in(pp.get(k, "0"), f"{path}.pieces[{i}].{k}") for k in ("a0", "a1", "b0", "b1")))
    try:
        return LineRule(breaks, tuple(pieces))
    except ValueError as exc:
        raise ParseError(path, str(exc)) from None


def _lines_in(obj, path: str) -> list:
    out = []
    for i, e in enumerate(_list(obj, path)):
        e = _obj(e, f"{path}[{i}]", ("at", "fn"))
        out.append((_unit_rat(e["at"], f"{path}[{i}].at"), line_func_in(e["fn"], f"{path}[{i}].fn")))
    keys = [k for k, _ in out]
    if len(set(keys)) != len(keys):
        raise ParseError(path, "duplicate line positions")
    return out


def germ_in(obj, path: str = "$") -> Germ:
    o = _obj(obj, path, (), ("vertical", "horizontal"))
    parts = {}
    for side in ("vertical", "horizontal"):
        p = f"{path}.{side}"
        s = _obj(o.get(side, {}), p, (), ("default", "exceptions"))
        rule = line_rule_in(s["default"], f"{p}.default") if "default" in s else LineRule.zero()
        parts[side] = (rule, _lines_in(s.get("exceptions", []), f"{p}.exceptions"))
    return Germ(parts["vertical"][0], parts["horizontal"][0], parts["vertical"][1], parts["horizontal"][1])


def restricted_in(obj, path: str = "$") -> RestrictedGerm:
    o = _obj(obj, path, (), ("vertical", "horizontal"))
    return RestrictedGerm(
        _lines_in(o.get("vertical", []), f"{path}.vertical"),
        _lines_in(o.get("horizontal", []), f"{path}.horizontal"),
    )


def table_in(obj, path: str = "$") -> RawGermTable:
    o = _obj(obj, path, ("entries",))
    entries = []
    for i, e in enumerate(_list(o["entries"], f"{path}.entries")):
        p = f"{path}.entries[{i}]"
        e = _obj(e, p, ("set", "germ"))
        entries.append((figure_in(e["set"], f"{p}.set"), restricted_in(e["germ"], f"{p}.germ")))
    return RawGermTable(tuple(entries))


def candidate_in(obj, path: str = "$") -> CandidateGlobal:
    o = _obj(obj, path, ("cells",), ("overrides",))
    cells = []
    for i, c in enumerate(_list(o["cells"], f"{path}.cells")):
        p = f"{path}.cells[{i}]"
        c = _obj(c, p, ("box", "a", "b", "c"))
        cells.append((box_in(c["box"], f"{p}.box"), tuple(rat_in(c[k], f"{p}.{k}") for k in "abc")))
    overrides = []
    for i, ov in enumerate(_list(o.get("overrides", []), f"{path}.overrides")):
        p = f"{path}.overrides[{i}]"
        ov = _obj(ov, p, ("orientation", "at", "fn"))
        if ov["orientation"] not in ("v", "h"):
            raise ParseError(f"{p}.orientation", "orientation must be \"v\" or \"h\"")
        overrides.append(((ov["orientation"], _unit_rat(ov["at"], f"{p}.at")), line_func_in(ov["fn"], f"{p}.fn")))
    try:
        return CandidateGlobal(tuple(cells), tuple(overrides))
    except ValueError as exc:
        raise ParseError(path, str(exc)) from None


def battery_in(obj, path: str = "$") -> list:
    return [figure_in(f, f"{path}[{i}]") for i, f in enumerate(_list(obj, path))]


CODECS = {
    "rat": (rat_out, rat_in),
    "interval": (interval_out, interval_in),
    "set1d": (set1d_out, set1d_in),
    "figure": (figure_out, figure_in),
    "simple_func": (simple_func_out, simple_func_in),
    "line_func": (line_func_out, line_func_in),
    "line_rule": (line_rule_out, line_rule_in),
    "germ": (germ_out, germ_in),
    "restricted_germ": (restricted_out, restricted_in),
    "table": (table_out, table_in),
    "candidate": (candidate_out, candidate_in),
    "battery": (battery_out, battery_in),
}


def _codec(kind: str):
    try:
        return CODECS[kind]
    except KeyError:
        raise ParseError("$", f"unknown kind {kind!r}") from None


def to_json(kind: str, value):
    return _codec(kind)[0](value)


def from_json(kind: str, obj):
    return _codec(kind)[1](obj, "$")


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def parse(kind: str, text: str):
    """Decode a bare payload of the given kind (a rational may also be given unquoted as ``p/q``)."""
    text = text.strip()
    if kind == "rat" and not text.startswith('"'):
        return rat_in(text)
    return from_json(kind, _loads(text))


def serialize(kind: str, value) -> str:
    return json.dumps(to_json(kind, value), sort_keys=True)


def dump_manifest(kind: str, value) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, "kind": kind, "payload": to_json(kind, value)}, indent=2, sort_keys=True)


def load_manifest(text: str, expect: str | None = None):
    """Decode a manifest and return ``(kind, value)``; ``expect`` pins the kind."""
    m = _obj(_loads(text), "$", ("schema_version", "kind", "payload"))
    if m["schema_version"] != SCHEMA_VERSION:
        raise ParseError("$.schema_version", f"unsupported schema version {m['schema_version']!r}")
    kind = m["kind"]
    if not isinstance(kind, str):
        raise ParseError("$.kind", "kind must be a string")
    if expect is not None and kind != expect:
        raise ParseError("$.kind", f"expected kind {expect!r}, got {kind!r}")
    return kind, _codec(kind)[1](m["payload"], "$.payload")

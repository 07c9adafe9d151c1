"""Command line interface.

Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
Every command prints a human-readable report, or JSON with ``--json``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import serialize as ser
from .decomposable import (
    COUNTABLE_HORIZONTAL_LINES,
    ALL_FIGURES,
    Decomposition,
    SigmaFieldModel,
    check_countability,
    check_double_star,
    check_star,
    double_star_battery,
    ds_battery,
    measurable,
    member,
    patch,
)
from .duality import functional_from_germ, norm_witness, pair
from .errors import GermDualError
from .functions import SimpleFunc, l1_norm
from .geometry import Box, Figure2D
from .germs import Germ, LineRule, consistency_check, germ_norm
from .laws import duality_bound, germ_laws
from .measure import INF, mu_lines
from .representability import (
    describe,
    exhaustive_nonrepresentability,
    coordinate_germ,
    standard_battery,
    verify_witness,
)


def _r(x) -> str:
    return "inf" if x == INF else ser.rat_out(x)


def _j(v):
    if isinstance(v, Fraction) or v == INF:
        return _r(v)
    return v


def _ok(flag: bool) -> str:
    return "ok" if flag else "FAIL"


class Report:
    """Collects text lines and a JSON-able dict side by side."""

    def __init__(self, title: str):
        self.lines = [title]
        self.data: dict = {"title": title, "checks": []}
        self.failed = False

    def say(self, text: str) -> None:
        self.lines.append(text)

    def check(self, name: str, passed: bool, **values) -> None:
        self.failed |= not passed
        self.data["checks"].append({"name": name, "passed": passed, **{k: _j(v) for k, v in values.items()}})
        extra = ", ".join(f"{k} = {v}" for k, v in values.items())
        self.lines.append(f"[{_ok(passed)}] {name}" + (f": {extra}" if extra else ""))

    @property
    def code(self) -> int:
        return 1 if self.failed else 0


def worked_pairings() -> list[tuple[str, SimpleFunc]]:
    half, third = Fraction(1, 2), Fraction(1, 3)
    cross = Figure2D.segment("v", half).union(Figure2D.segment("h", third))
    return [
        ("f = 1 on {1/2} x [0,1]", SimpleFunc.indicator(Figure2D.segment("v", half))),
        ("f = 1 on the cross {1/2} x [0,1] U [0,1] x {1/3}", SimpleFunc.indicator(cross)),
        ("f = 10 on {1/2} x [9/10,1]", SimpleFunc.indicator(Figure2D.segment("v", half, Fraction(9, 10), 1), 10)),
        ("f = 1 on [0,1] x {1/3}", SimpleFunc.indicator(Figure2D.segment("h", third))),
    ]


def demo_dual_pairing(args) -> Report:
    G = coordinate_germ()
    T = functional_from_germ(G)
    N = germ_norm(G)
    rep = Report("Tf = sum_x int f(x,y) y dy + sum_y int f(x,y) x dx, paired through the germ (g_A)")
    rep.check("germ norm", N == 1, norm=N)
    for label, f in worked_pairings():
        tf, l1 = pair(G, f), l1_norm(f)
        rep.check(label, abs(tf) <= N * l1 and T(f) == tf, Tf=tf, l1=l1, line_form_Tf=T(f))
    return rep


def demo_norm_attainment(args) -> Report:
    eps = ser.rat_in(args.eps, "--eps")
    if eps <= 0:
        raise ser.ParseError("--eps", "must be positive")
    G = coordinate_germ()
    N = germ_norm(G)
    f = norm_witness(G, eps)
    tf, l1 = pair(G, f), l1_norm(f)
    rep = Report(f"norm attainment for the germ (g_A), eps = {eps}")
    (c, fig), = f.terms
    rep.say(f"witness: f = {c} on {fig}")
    rep.data["witness"] = ser.simple_func_out(f)
    rep.check("unit L1 norm", l1 == 1, l1=l1)
    rep.check("|Tf| >= ||G|| - eps", abs(tf) >= N - eps, Tf=tf, norm=N, bound=N - eps)
    return rep


def demo_non_representable(args) -> Report:
    G = coordinate_germ()
    battery = standard_battery(args.seed, args.random)
    report = exhaustive_nonrepresentability(G, battery)
    rep = Report(f"single-function candidates against the germ (g_A): {len(battery)} candidates, seed {args.seed}")
    rows = []
    verified = 0
    for g, verdict in report.entries:
        w = verdict.witness
        if w is None:
            rep.say(f"{describe(g)}: REPRESENTS")
            rows.append({"candidate": describe(g), "verdict": "represents", "witness": None})
            continue
        ok = verify_witness(g, G, w)
        verified += ok
        line = "x" if w.orientation == "v" else "y"
        rep.say(f"{describe(g)}: witness A = {w.A} on {line} = {w.line}, over {w.interval}: g gives {w.lhs}, g_A gives {w.rhs}")
        rows.append(
            {
                "candidate": describe(g),
                "verdict": "witness",
                "witness": {
                    "A": ser.figure_out(w.A),
                    "orientation": w.orientation,
                    "line": _r(w.line),
                    "interval": ser.interval_out(w.interval),
                    "lhs": ser.line_func_out(w.lhs),
                    "rhs": ser.line_func_out(w.rhs),
                    "verified": ok,
                },
            }
        )
    rep.data["candidates"] = rows
    rep.check("every candidate refuted", report.all_refuted, refuted=len(battery) - len(report.representing))
    rep.check("every witness re-verified", verified == len(battery), verified=verified)
    return rep


def counterexample2_germ() -> Germ:
    return Germ(LineRule.zero(), LineRule.along())


def demo_ds_remark(args) -> Report:
    D = Decomposition()
    M = SigmaFieldModel(COUNTABLE_HORIZONTAL_LINES)
    battery = ds_battery()
    half = Fraction(1, 2)
    rep = Report("decomposition into horizontal lines Omega_y under the lines measure")
    part = D.part(half)
    rep.check("Omega_1/2 is in the sigma-field", member(M, part))
    rep.check("mu(Omega_1/2) = 1", mu_lines(part) == 1, mu=mu_lines(part))
    star = check_star(D, "lines", battery)
    rep.check("(*) holds on the battery", all(i.passed for i in star), sets=len(star))
    rep.check("finite-measure members meet finitely many parts", not check_countability(D, M, "lines", battery))
    strip = Figure2D.of(Box.closed(0, half, 0, 1))
    w = check_double_star(D, M, double_star_battery())
    rep.check("(**) fails on the strip [0,1/2] x [0,1]", w == strip, witness=str(w))

    G = counterexample2_germ()
    g = patch(G, D)
    is_x = all(co == (0, 1, 0) for _, co in g.cells) and not g.overrides
    rep.check("patched function is g(x,y) = x", is_x, patched=describe(g))
    mw = measurable(g, M)
    rep.check(
        "g is not measurable",
        mw is not None and mw.threshold == half,
        threshold=mw.threshold if mw else None,
        superlevel=str(mw.figure) if mw else None,
    )
    N = germ_norm(G, "lines")
    for label, f in worked_pairings():
        tf, l1 = pair(G, f, "lines"), l1_norm(f, "lines")
        rep.check(f"bounded: {label}", abs(tf) <= N * l1, Tf=tf, l1=l1)
    full = SigmaFieldModel(ALL_FIGURES)
    rep.check("with all figures measurable, (**) holds", check_double_star(D, full, double_star_battery()) is None)
    rep.check("with all figures measurable, g is measurable", measurable(g, full) is None)
    return rep


def _load(path: str, kind: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ser.ParseError(f"{path}: line {exc.lineno} column {exc.colno}", exc.msg) from None
    if isinstance(obj, dict) and "schema_version" in obj:
        return ser.load_manifest(text, expect=kind)[1]
    return ser.from_json(kind, obj)


def cmd_eval(args) -> Report:
    G = _load(args.germ, "germ")
    f = _load(args.func, "simple_func")
    tf = pair(G, f, args.measure)
    l1 = l1_norm(f, args.measure)
    N = germ_norm(G, args.measure)
    rep = Report(f"pairing under the {args.measure} measure")
    rep.data.update(Tf=_j(tf), l1=_j(l1), norm=_j(N))
    rep.check("|Tf| <= ||G|| * ||f||_1", abs(tf) <= N * l1, Tf=tf, l1=l1, norm=N)
    return rep


def cmd_check_germ(args) -> Report:
    table = _load(args.table, "table")
    w = consistency_check(table)
    rep = Report(f"consistency of {len(table.entries)} restricted germs")
    if w is None:
        rep.check("g_A = g_B a.e. on A n B for every pair", True)
    else:
        line = "x" if w.orientation == "v" else "y"
        rep.check(
            "g_A = g_B a.e. on A n B for every pair",
            False,
            entries=f"{w.i},{w.j}",
            line=f"{line} = {w.line}",
            interval=str(w.interval),
        )
        rep.data["witness"] = {
            "i": w.i,
            "j": w.j,
            "orientation": w.orientation,
            "line": _r(w.line),
            "interval": ser.interval_out(w.interval),
        }
    return rep


def cmd_norm(args) -> Report:
    G = _load(args.germ, "germ")
    N = germ_norm(G, args.measure)
    rep = Report(f"germ norm under the {args.measure} measure")
    rep.say(f"||G|| = {N}")
    rep.data["norm"] = _r(N)
    return rep


def cmd_axioms(args) -> Report:
    rep = Report(f"normed-space laws and duality bound, seed {args.seed}, {args.cases} cases")
    for res in germ_laws(args.seed, args.cases) + [duality_bound(args.seed, args.cases)]:
        rep.check(res.name, res.passed, cases=res.cases, failures=len(res.failures))
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a machine-readable report")

    p = argparse.ArgumentParser(prog="germdual", description="Exact computations with germs and the dual of L1")
    sub = p.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="worked examples")
    demos = demo.add_subparsers(dest="demo", required=True)
    d = demos.add_parser("dual-pairing", parents=[common])
    d.set_defaults(run=demo_dual_pairing)
    d = demos.add_parser("norm-attainment", parents=[common])
    d.add_argument("--eps", default="1/10", help="tolerance as a rational p/q (default 1/10)")
    d.set_defaults(run=demo_norm_attainment)
    d = demos.add_parser("non-representable", parents=[common])
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--random", type=int, default=100, help="number of random candidates (default 100)")
    d.set_defaults(run=demo_non_representable)
    d = demos.add_parser("ds-remark", parents=[common])
    d.set_defaults(run=demo_ds_remark)

    e = sub.add_parser("eval", parents=[common], help="pair a germ with a simple function")
    e.add_argument("--germ", required=True)
    e.add_argument("--func", required=True)
    e.add_argument("--measure", choices=("grid", "lines"), default="grid")
    e.set_defaults(run=cmd_eval)

    c = sub.add_parser("check-germ", parents=[common], help="check a table of restricted germs for consistency")
    c.add_argument("--table", required=True)
    c.set_defaults(run=cmd_check_germ)

    n = sub.add_parser("norm", parents=[common], help="germ norm")
    n.add_argument("--germ", required=True)
    n.add_argument("--measure", choices=("grid", "lines"), default="grid")
    n.set_defaults(run=cmd_norm)

    a = sub.add_parser("axioms", parents=[common], help="randomized law checks")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--cases", type=int, default=500)
    a.set_defaults(run=cmd_axioms)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.run(args)
    except (GermDualError, OSError) as exc:
        msg = f"{type(exc).__name__}: {exc}"
        if args.json:
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True))
        else:
            print(msg, file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({**rep.data, "exit_code": rep.code}, indent=2, sort_keys=True))
    else:
        print("\n".join(rep.lines))
    return rep.code


if __name__ == "__main__":
    sys.exit(main())

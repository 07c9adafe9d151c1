"""Deciding whether one global function represents a germ.

A candidate ``g`` represents ``G`` when ``g = g_A`` almost everywhere on
every sigma-finite ``A``; in the box class that means: on every single
vertical and horizontal line, the trace of ``g`` agrees Lebesgue-a.e. with
the line function the germ prescribes there.

Lines through the open interior of a cell are handled in bulk. The
candidate's trace and the germ's rule both depend affinely on the line
position, so matching them is a pair of linear equations in that position:
solved for all positions, for one, or for none. Whenever it is not all, a
rational line avoiding the finitely many exceptional ones is a witness.
The finitely many remaining lines (cell boundaries, overrides, germ
exceptions) are compared one by one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .functions import CandidateGlobal, LineFunc
from .geometry import Figure2D, Interval, Orientation, simplest_rational_in
from .germs import ORIENTATIONS, Germ, LineRule

COEFF_GRID = tuple(Fraction(c) for c in ("-1", "-1/2", "0", "1/2", "1"))


def coordinate_germ() -> Germ:
    """``g_A = y`` along vertical lines and ``x`` along horizontal lines of ``A``."""
    return Germ(LineRule.along(), LineRule.along())


@dataclass(frozen=True)
class ReprWitness:
    """A sigma-finite segment ``A`` on which ``g`` and ``g_A`` differ over ``interval``."""

    A: Figure2D
    orientation: Orientation
    line: Fraction
    interval: Interval
    lhs: LineFunc
    rhs: LineFunc


@dataclass(frozen=True)
class ReprVerdict:
    witness: ReprWitness | None = None

    @property
    def represents(self) -> bool:
        return self.witness is None


def _solve(const: Fraction, slope: Fraction):
    """Solutions of ``const + slope*s = 0``: ``"all"``, ``None`` (none) or the single root."""
    if slope == 0:
        return "all" if const == 0 else None
    return -const / slope


def _matching_positions(trace, rule_piece):
    """Where ``(p0+p1 s) + (q0+q1 s) t`` equals the rule piece identically in ``t``."""
    p0, p1, q0, q1 = trace
    a0, a1, b0, b1 = rule_piece
    first = _solve(p0 - a0, p1 - a1)
    second = _solve(q0 - b0, q1 - b1)
    if first is None or second is None:
        return None
    if first == "all":
        return second
    if second == "all" or second == first:
        return first
    return None


def _witness(g: CandidateGlobal, G: Germ, o: Orientation, s: Fraction, interval: Interval) -> ReprWitness:
    return ReprWitness(
        Figure2D.segment(o, s, interval.lo, interval.hi),
        o,
        s,
        interval,
        g.trace(o, s),
        G.line(o, s),
    )


def special_lines(g: CandidateGlobal, G: Germ, orientation: Orientation) -> set[Fraction]:
    out = set(g.line_positions(orientation))
    out |= {s for (o, s), _ in g.overrides if o == orientation}
    out |= set(G.exceptions(orientation))
    return out


def represents(g: CandidateGlobal, G: Germ) -> ReprVerdict:
    special = {o: special_lines(g, G, o) for o in ORIENTATIONS}
    for o in ORIENTATIONS:
        rule = G.default(o)
        for box, (a, b, c) in g.cells:
            if not box.has_area:
                continue
            pos, ext = box.position(o), box.extent(o)
            trace = (a, b, c, 0) if o == "v" else (a, c, b, 0)
            for lo, hi, piece in rule.segments():
                overlap = ext.intersect(Interval.open(lo, hi))
                if overlap is None or overlap.length == 0:
                    continue
                match = _matching_positions(trace, piece)
                if match == "all":
                    continue
                avoid = set(special[o])
                if match is not None:
                    avoid.add(match)
                s = simplest_rational_in(pos.lo, pos.hi, avoid)
                return ReprVerdict(_witness(g, G, o, s, Interval.open(overlap.lo, overlap.hi)))
    for o in ORIENTATIONS:
        for s in sorted(special[o]):
            gap = g.trace(o, s).first_difference(G.line(o, s))
            if gap is not None:
                return ReprVerdict(_witness(g, G, o, s, gap))
    return ReprVerdict()


@dataclass(frozen=True)
class NonRepresentabilityReport:
    entries: tuple[tuple[CandidateGlobal, ReprVerdict], ...]

    @property
    def all_refuted(self) -> bool:
        return all(not v.represents for _, v in self.entries)

    @property
    def representing(self) -> list[CandidateGlobal]:
        return [g for g, v in self.entries if v.represents]


def exhaustive_nonrepresentability(G: Germ, battery) -> NonRepresentabilityReport:
    return NonRepresentabilityReport(tuple((g, represents(g, G)) for g in battery))


def coefficient_battery(values=COEFF_GRID) -> list[CandidateGlobal]:
    """Every ``a + b*x + c*y`` with coefficients from ``values`` on the trivial decomposition."""
    return [CandidateGlobal.uniform(a, b, c) for a, b, c in product(values, repeat=3)]


def standard_battery(seed: int = 0, n_random: int = 100) -> list[CandidateGlobal]:
    from .random_instances import random_candidate

    rng = random.Random(seed)
    return coefficient_battery() + [random_candidate(rng) for _ in range(n_random)]


def verify_witness(g: CandidateGlobal, G: Germ, w: ReprWitness, samples: int = 64) -> bool:
    """Re-check a witness by pointwise evaluation of ``g`` against ``restrict(G, A)`` along the line."""
    from .germs import restrict
    from .measure import sigma_finite

    if w.interval.length <= 0 or not sigma_finite(w.A):
        return False
    gA = restrict(G, w.A)
    lo, hi = w.interval.lo, w.interval.hi
    disagree = 0
    for k in range(1, samples + 1):
        t = lo + (hi - lo) * Fraction(k, samples + 1)
        x, y = (w.line, t) if w.orientation == "v" else (t, w.line)
        if g(x, y) != gA(x, y):
            disagree += 1
    slack = 1 + len(w.lhs.points) + len(w.rhs.points) + len(g.overrides)
    return disagree >= samples - slack


def affine_formula(a, b, c) -> str:
    terms = [(b, "x"), (c, "y")]
    parts = [f"{k}*{v}" if k not in (1, -1) else ("-" if k == -1 else "") + v for k, v in terms if k != 0]
    if a != 0 or not parts:
        parts.insert(0, str(a))
    return " + ".join(parts).replace("+ -", "- ")


def describe(g: CandidateGlobal) -> str:
    coeffs = {co for _, co in g.cells}
    if len(coeffs) == 1:
        text = "g(x,y) = " + affine_formula(*next(iter(coeffs)))
    else:
        text = f"per-cell affine g on {len(g.cells)} cells"
    if g.overrides:
        text += ", overrides " + ", ".join(f"{'x' if o == 'v' else 'y'}={s}" for (o, s), _ in g.overrides)
    return text

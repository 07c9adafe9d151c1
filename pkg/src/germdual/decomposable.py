"""Decomposition of the square into horizontal lines, and what it does and does not buy.

With the lines measure every horizontal line ``Omega_y`` is a sigma-finite
part of mass 1, and a germ can be patched into one global function by
reading its member on each line. Whether that function is measurable
depends on the sigma-field: over all figures it is; over the sigma-field
of sets that are (or whose complements are) carried by countably many
horizontal lines it is not, because a super-level set of ``g(x, y) = x`` is
a vertical strip.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Unsupported
from .functions import CandidateGlobal, LineFunc
from .geometry import ONE, ZERO, Box, Figure2D, Interval, Set1D, elementary_pieces
from .germs import Germ
from .measure import INF, ExtRat, critical_lines, measure_of

ALL_FIGURES = "all_figures"
COUNTABLE_HORIZONTAL_LINES = "countable_horizontal_lines"

PatchedFunction = CandidateGlobal


@dataclass(frozen=True)
class SigmaFieldModel:
    kind: str = ALL_FIGURES

    def __post_init__(self):
        if self.kind not in (ALL_FIGURES, COUNTABLE_HORIZONTAL_LINES):
            raise ValueError(f"unknown sigma-field model {self.kind!r}")


@dataclass(frozen=True)
class Decomposition:
    """The family ``Omega_y = [0, 1] x {y}``, ``y`` in [0, 1]; parts are built on demand."""

    kind: str = "horizontal_lines"

    def part(self, y) -> Figure2D:
        return Figure2D.segment("h", y)

    def lines_with_mass(self, A: Figure2D) -> list[Fraction]:
        """Every ``y`` where ``A`` can meet ``Omega_y`` in positive length, one per swept interval."""
        cl = critical_lines(A)
        return sorted(set(cl.horizontal_points) | {iv.representative for iv in cl.horizontal_intervals})


def on_finitely_many_lines(A: Figure2D) -> bool:
    return all(b.y.is_point for b in A.boxes)


def member(M: SigmaFieldModel, A: Figure2D) -> bool:
    if M.kind == ALL_FIGURES:
        return True
    return on_finitely_many_lines(A) or on_finitely_many_lines(A.complement())


@dataclass(frozen=True)
class StarItem:
    A: Figure2D
    part_measures: tuple[tuple[Fraction, ExtRat], ...]
    mu: ExtRat

    @property
    def premise(self) -> bool:
        return all(m == 0 for _, m in self.part_measures)

    @property
    def passed(self) -> bool:
        return not self.premise or self.mu == 0


def check_star(D: Decomposition, measure: str, battery) -> list[StarItem]:
    """If ``A`` is null on every part it must be null: evaluated set by set over ``battery``."""
    items = []
    for A in battery:
        parts = tuple((y, measure_of(A.intersect(D.part(y)), measure)) for y in D.lines_with_mass(A))
        items.append(StarItem(A, parts, measure_of(A, measure)))
    return items


def check_countability(D: Decomposition, M: SigmaFieldModel, measure: str, battery) -> list[Figure2D]:
    """Members of finite measure that meet infinitely many parts (empty list when the hypothesis holds)."""
    return [A for A in battery if member(M, A) and measure_of(A, measure) != INF and not on_finitely_many_lines(A)]


def _probe_lines(A: Figure2D) -> list[Fraction]:
    ys = {ZERO, ONE}
    for b in A.boxes:
        ys |= {b.y.lo, b.y.hi}
    return [p.representative for p in elementary_pieces(ys)]


def check_double_star(D: Decomposition, M: SigmaFieldModel, battery) -> Figure2D | None:
    """First set whose every slice is a member while the set itself is not; None if (**) holds."""
    for A in battery:
        slices_ok = all(member(M, A.intersect(D.part(y))) for y in _probe_lines(A))
        if slices_ok and not member(M, A):
            return A
    return None


def patch(G: Germ, D: Decomposition) -> PatchedFunction:
    """``g = g_{Omega_y}`` on each horizontal line, i.e. ``g(x, y) = rule(y, x)``."""
    rule = G.horizontal
    if any(b1 != 0 for _, _, _, b1 in rule.pieces):
        raise Unsupported("horizontal rule with an x*y term has no per-cell affine form")

    def coeffs(box: Box):
        a0, a1, b0, _ = rule.coeffs_at(box.x.representative)
        return (a0, b0, a1)

    overrides = [(("h", y), fn) for y, fn in G.horizontal_exceptions]
    return CandidateGlobal.from_grid(rule.breaks, (), coeffs, overrides)


def _half_line(bound: Fraction, above: bool) -> Interval | None:
    """``{t in [0, 1] : t > bound}`` (or ``< bound``)."""
    if above:
        if bound >= 1:
            return None
        return Interval(max(bound, ZERO), ONE, bound < 0, True)
    if bound <= 0:
        return None
    return Interval(ZERO, min(bound, ONE), True, bound > 1)


def _line_superlevel(fn: LineFunc, q: Fraction) -> Set1D:
    cuts = set(fn.breaks) | {t for t, _ in fn.points}
    for lo, hi, a, b in fn.segments():
        if b != 0:
            r = (q - a) / b
            if lo < r < hi:
                cuts.add(r)
    pieces = elementary_pieces(cuts)
    return Set1D.union_of(p for p in pieces if fn(p.representative) > q)


def superlevel(g: PatchedFunction, q) -> Figure2D:
    """The figure ``{g > q}``; needs every cell value to depend on at most one coordinate."""
    q = Fraction(q)
    boxes = []
    for box, (a, b, c) in g.cells:
        if b != 0 and c != 0:
            raise Unsupported("cell value depends on both coordinates; its level sets are diagonal")
        if b == 0 and c == 0:
            if a > q:
                boxes.append(box)
            continue
        slope, along_x = (b, True) if b != 0 else (c, False)
        half = _half_line((q - a) / slope, slope > 0)
        if half is None:
            continue
        if along_x:
            x = box.x.intersect(half)
            if x is not None:
                boxes.append(Box(x, box.y))
        else:
            y = box.y.intersect(half)
            if y is not None:
                boxes.append(Box(box.x, y))
    fig = Figure2D(tuple(boxes))
    v_lines = Figure2D(tuple(b for (o, s), _ in g.overrides if o == "v" for b in Figure2D.segment("v", s).boxes))
    h_lines = Figure2D(tuple(b for (o, s), _ in g.overrides if o == "h" for b in Figure2D.segment("h", s).boxes))
    if g.overrides:
        fig = fig.diff(v_lines.union(h_lines))
        h_part = Figure2D(
            tuple(Box(iv, Interval.point(s)) for (o, s), fn in g.overrides if o == "h" for iv in _line_superlevel(fn, q))
        )
        v_part = Figure2D(
            tuple(Box(Interval.point(s), iv) for (o, s), fn in g.overrides if o == "v" for iv in _line_superlevel(fn, q))
        )
        fig = fig.union(h_part.diff(v_lines)).union(v_part)
    return fig


def thresholds(g: PatchedFunction) -> list[Fraction]:
    """Midpoints between consecutive corner values first, then the corner values themselves."""
    values = set()
    for box, (a, b, c) in g.cells:
        for x in (box.x.lo, box.x.hi):
            for y in (box.y.lo, box.y.hi):
                values.add(a + b * x + c * y)
    for _, fn in g.overrides:
        for lo, hi, a, b in fn.segments():
            values |= {a + b * lo, a + b * hi}
        values |= {v for _, v in fn.points}
    ordered = sorted(values)
    mids = [(u + v) / 2 for u, v in zip(ordered, ordered[1:])]
    return mids + ordered


@dataclass(frozen=True)
class MeasurabilityWitness:
    figure: Figure2D
    threshold: Fraction


def measurable(g: PatchedFunction, M: SigmaFieldModel) -> MeasurabilityWitness | None:
    """Return a super-level set outside the sigma-field, or None if every probed one is inside."""
    for q in thresholds(g):
        S = superlevel(g, q)
        if not member(M, S):
            return MeasurabilityWitness(S.simplified(), q)
    return None


def ds_battery() -> list[Figure2D]:
    """Members of the countable-lines sigma-field: line pieces, points, the square and co-line sets."""
    h, t = Fraction(1, 2), Fraction(1, 3)
    return [
        Figure2D.empty(),
        Figure2D.segment("h", h),
        Figure2D.segment("h", t, 0, h),
        Figure2D.segment("h", h).union(Figure2D.segment("h", t)),
        Figure2D.of(Box(Interval.point(h), Interval.point(t))),
        Figure2D.square(),
        Figure2D.square().diff(Figure2D.segment("h", t)),
    ]


def double_star_battery() -> list[Figure2D]:
    """``ds_battery`` followed by sets whose every horizontal slice is a member but which are not."""
    h, t = Fraction(1, 2), Fraction(1, 3)
    return ds_battery() + [
        Figure2D.of(Box.closed(0, h, 0, 1)),
        Figure2D.segment("v", h),
        Figure2D.segment("v", h).union(Figure2D.segment("h", t)),
    ]

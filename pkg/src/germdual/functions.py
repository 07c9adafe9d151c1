"""Simple integrable functions, line restrictions and exact line integrals.

Two one-dimensional shapes appear on a single line: ``LineStep`` (piecewise
constant, what a simple function looks like on a line) and ``LineFunc``
(piecewise affine, what a germ or a candidate function looks like on a
line). Integrals of a step against an affine weight are evaluated with the
antiderivative ``a*t + b*t**2/2``, so every number here is an exact
Fraction.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .geometry import (
    ONE,
    ZERO,
    Box,
    Figure2D,
    Interval,
    Orientation,
    Set1D,
    as_rat,
    refine_to_cells,
)
from .measure import INF, ExtRat, critical_lines, line_orientations, sigma_finite


def _point_on_line(orientation: Orientation, at, t) -> tuple:
    return (at, t) if orientation == "v" else (t, at)


def _check_breaks(breaks: tuple) -> None:
    for b in breaks:
        if not 0 < b < 1:
            raise ValueError(f"breakpoint {b} must lie strictly inside (0, 1)")
    if any(a >= b for a, b in zip(breaks, breaks[1:])):
        raise ValueError("breakpoints must be strictly increasing")


def _cuts(breaks: Iterable[Fraction]) -> list[Fraction]:
    return sorted(set(breaks) | {ZERO, ONE})


@dataclass(frozen=True)
class LineFunc:
    """Piecewise affine function on [0, 1]: ``t -> a + b*t`` on each piece.

    Piece ``i`` covers ``[breaks[i-1], breaks[i])``; the last piece is closed
    at 1. ``points`` holds finitely many pointwise values that override the
    pieces; they are invisible to integrals, essential sups and a.e.
    comparisons.
    """

    breaks: tuple[Fraction, ...] = ()
    pieces: tuple[tuple[Fraction, Fraction], ...] = ((ZERO, ZERO),)
    points: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "breaks", tuple(as_rat(b) for b in self.breaks))
        object.__setattr__(self, "pieces", tuple((as_rat(a), as_rat(b)) for a, b in self.pieces))
        object.__setattr__(self, "points", tuple(sorted(((as_rat(t), as_rat(v)) for t, v in self.points), key=lambda kv: kv[0])))
        _check_breaks(self.breaks)
        if len(self.pieces) != len(self.breaks) + 1:
            raise ValueError("a LineFunc needs exactly one piece more than breakpoints")

    @classmethod
    def constant(cls, c) -> LineFunc:
        return cls((), ((as_rat(c), ZERO),))

    @classmethod
    def affine(cls, a, b) -> LineFunc:
        return cls((), ((as_rat(a), as_rat(b)),))

    @classmethod
    def identity(cls) -> LineFunc:
        return cls.affine(0, 1)

    @classmethod
    def zero(cls) -> LineFunc:
        return cls()

    def coeffs_at(self, t) -> tuple[Fraction, Fraction]:
        return self.pieces[bisect_right(self.breaks, t)]

    def __call__(self, t) -> Fraction:
        for p, v in self.points:
            if p == t:
                return v
        a, b = self.coeffs_at(t)
        return a + b * t

    def segments(self) -> Iterator[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """Yield ``(lo, hi, a, b)`` per piece."""
        cuts = (ZERO,) + self.breaks + (ONE,)
        for (lo, hi), (a, b) in zip(zip(cuts, cuts[1:]), self.pieces):
            yield lo, hi, a, b

    def refined(self, breaks: Iterable[Fraction]) -> LineFunc:
        cuts = _cuts(list(self.breaks) + [as_rat(b) for b in breaks])
        inner = tuple(cuts[1:-1])
        pieces = tuple(self.coeffs_at((lo + hi) / 2) for lo, hi in zip(cuts, cuts[1:]))
        return LineFunc(inner, pieces, self.points)

    def simplified(self) -> LineFunc:
        breaks, pieces = [], [self.pieces[0]]
        for b, piece in zip(self.breaks, self.pieces[1:]):
            if piece != pieces[-1]:
                breaks.append(b)
                pieces.append(piece)
        kept = LineFunc(tuple(breaks), tuple(pieces))
        points = tuple((t, v) for t, v in self.points if kept(t) != v)
        return LineFunc(tuple(breaks), tuple(pieces), points)

    def _combine(self, other: LineFunc, op) -> LineFunc:
        cuts = _cuts(self.breaks + other.breaks)
        pieces = []
        for lo, hi in zip(cuts, cuts[1:]):
            m = (lo + hi) / 2
            pieces.append(op(self.coeffs_at(m), other.coeffs_at(m)))
        pts = {t for t, _ in self.points} | {t for t, _ in other.points}
        points = tuple((t, op((self(t), ZERO), (other(t), ZERO))[0]) for t in pts)
        return LineFunc(tuple(cuts[1:-1]), tuple(pieces), points).simplified()

    def __add__(self, other: LineFunc) -> LineFunc:
        return self._combine(other, lambda p, q: (p[0] + q[0], p[1] + q[1]))

    def __sub__(self, other: LineFunc) -> LineFunc:
        return self._combine(other, lambda p, q: (p[0] - q[0], p[1] - q[1]))

    def scaled(self, c) -> LineFunc:
        c = as_rat(c)
        return LineFunc(
            self.breaks,
            tuple((c * a, c * b) for a, b in self.pieces),
            tuple((t, c * v) for t, v in self.points),
        ).simplified()

    def __neg__(self) -> LineFunc:
        return self.scaled(-1)

    def first_difference(self, other: LineFunc, over: Set1D | None = None) -> Interval | None:
        """First open interval of positive length (inside ``over``) where the two differ."""
        extra = []
        if over is not None:
            for iv in over:
                extra += [iv.lo, iv.hi]
        cuts = _cuts(list(self.breaks) + list(other.breaks) + extra)
        for lo, hi in zip(cuts, cuts[1:]):
            m = (lo + hi) / 2
            if over is not None and not over.contains(m):
                continue
            if self.coeffs_at(m) != other.coeffs_at(m):
                return Interval.open(lo, hi)
        return None

    def ae_equal(self, other: LineFunc, over: Set1D | None = None) -> bool:
        return self.first_difference(other, over) is None

    def __str__(self) -> str:
        parts = []
        for lo, hi, a, b in self.segments():
            expr = _affine_str(a, b, "t")
            if self.breaks:
                parts.append(f"{expr} on [{lo}, {hi}{']' if hi == 1 else ')'}")
            else:
                parts.append(expr)
        return "t -> " + "; ".join(parts)


def _affine_str(a: Fraction, b: Fraction, var: str) -> str:
    if b == 0:
        return str(a)
    term = var if b == 1 else f"-{var}" if b == -1 else f"{b}*{var}"
    if a == 0:
        return term
    return f"{a} + {term}" if not term.startswith("-") else f"{a} - {term[1:]}"


@dataclass(frozen=True)
class LineStep:
    """Piecewise constant function on [0, 1] with values at the cut points.

    ``values[i]`` holds on the open gap between consecutive ``cuts``;
    ``point_values[i]`` at ``cuts[i]``.
    """

    cuts: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    point_values: tuple[Fraction, ...]

    @classmethod
    def constant(cls, c) -> LineStep:
        c = as_rat(c)
        return cls((ZERO, ONE), (c,), (c, c))

    def piece_value(self, t) -> Fraction:
        """Value on the open piece containing ``t`` (cut points resolve to the piece on the right)."""
        i = bisect_right(self.cuts, t) - 1
        return self.values[min(i, len(self.values) - 1)]

    def __call__(self, t) -> Fraction:
        i = bisect_right(self.cuts, t) - 1
        if self.cuts[i] == t:
            return self.point_values[i]
        return self.values[i]

    def abs(self) -> LineStep:
        return LineStep(self.cuts, tuple(abs(v) for v in self.values), tuple(abs(v) for v in self.point_values))

    @property
    def is_zero_ae(self) -> bool:
        return all(v == 0 for v in self.values)


@dataclass(frozen=True)
class SimpleFunc:
    """Finite rational combination of figure indicators."""

    terms: tuple[tuple[Fraction, Figure2D], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((as_rat(c), fig) for c, fig in self.terms))

    @classmethod
    def indicator(cls, figure: Figure2D, coeff=ONE) -> SimpleFunc:
        return cls(((as_rat(coeff), figure),))

    def __call__(self, x, y) -> Fraction:
        return sum((c for c, fig in self.terms if fig.contains(x, y)), ZERO)

    def __add__(self, other: SimpleFunc) -> SimpleFunc:
        return SimpleFunc(self.terms + other.terms)

    def scaled(self, c) -> SimpleFunc:
        c = as_rat(c)
        return SimpleFunc(tuple((c * k, fig) for k, fig in self.terms))

    def __neg__(self) -> SimpleFunc:
        return self.scaled(-1)

    def __sub__(self, other: SimpleFunc) -> SimpleFunc:
        return self + (-other)

    def figures(self) -> list[Figure2D]:
        return [fig for _, fig in self.terms]


def support(f: SimpleFunc) -> Figure2D:
    """The set ``{f != 0}`` as a figure, read off the cell refinement of all terms."""
    return refine_to_cells(f.figures()).figure(lambda x, y: f(x, y) != 0)


def restrict_line(f: SimpleFunc, orientation: Orientation, at) -> LineStep:
    at = as_rat(at)
    breaks = set()
    for _, fig in f.terms:
        for box in fig.boxes:
            if box.position(orientation).contains(at):
                ext = box.extent(orientation)
                breaks |= {ext.lo, ext.hi}
    cuts = _cuts(breaks)

    def value(t):
        return f(*_point_on_line(orientation, at, t))

    gaps = tuple(value((lo + hi) / 2) for lo, hi in zip(cuts, cuts[1:]))
    return LineStep(tuple(cuts), gaps, tuple(value(c) for c in cuts))


def integrate_line(s: LineStep, w: LineFunc, over: Set1D | None = None) -> Fraction:
    """Exact integral of ``s * w`` over ``over`` (default [0, 1])."""
    extra = []
    if over is not None:
        for iv in over:
            extra += [iv.lo, iv.hi]
    cuts = _cuts(list(s.cuts) + list(w.breaks) + extra)
    total = ZERO
    for lo, hi in zip(cuts, cuts[1:]):
        m = (lo + hi) / 2
        if over is not None and not over.contains(m):
            continue
        v = s.piece_value(m)
        if v == 0:
            continue
        a, b = w.coeffs_at(m)
        total += v * (a * (hi - lo) + b * (hi * hi - lo * lo) / 2)
    return total


def linf_line(w: LineFunc, over: Set1D | None = None) -> Fraction:
    """Essential sup of ``|w|`` on ``over``; zero when ``over`` is null."""
    over = Set1D.unit() if over is None else over
    best = ZERO
    for iv in over:
        if iv.length == 0:
            continue
        for lo, hi, a, b in w.segments():
            l, h = max(lo, iv.lo), min(hi, iv.hi)
            if h > l:
                best = max(best, abs(a + b * l), abs(a + b * h))
    return best


def l1_norm(f: SimpleFunc, measure: str = "grid") -> ExtRat:
    F = support(f)
    if not sigma_finite(F):
        return INF
    cl = critical_lines(F)
    one = LineFunc.constant(1)
    total = ZERO
    for o in line_orientations(measure):
        for s in cl.points(o):
            total += integrate_line(restrict_line(f, o, s).abs(), one)
    return total


Coeffs = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class CandidateGlobal:
    """A would-be single function on the square.

    On each cell the value is ``a + b*x + c*y``; ``overrides`` replace the
    value on finitely many whole vertical (``"v"``) or horizontal (``"h"``)
    lines. The cells must partition the square (as produced by
    ``refine_to_cells``).
    """

    cells: tuple[tuple[Box, Coeffs], ...]
    overrides: tuple[tuple[tuple[str, Fraction], LineFunc], ...] = ()

    def __post_init__(self):
        cells = tuple((box, tuple(as_rat(c) for c in co)) for box, co in self.cells)
        object.__setattr__(self, "cells", cells)
        ov = tuple(sorted((((o, as_rat(s)), fn) for (o, s), fn in self.overrides), key=lambda kv: kv[0]))
        if len({k for k, _ in ov}) != len(ov):
            raise ValueError("duplicate line override")
        object.__setattr__(self, "overrides", ov)

    @classmethod
    def from_grid(cls, xbreaks=(), ybreaks=(), coeffs: Callable[[Box], Coeffs] | Coeffs = (0, 0, 0), overrides=()):
        grid = refine_to_cells([], xbreaks, ybreaks)
        pick = coeffs if callable(coeffs) else (lambda _box: coeffs)
        return cls(tuple((box, pick(box)) for box in grid.cells), tuple(overrides))

    @classmethod
    def uniform(cls, a, b, c, overrides=()) -> CandidateGlobal:
        return cls.from_grid((), (), (a, b, c), overrides)

    def override(self, orientation: str, at) -> LineFunc | None:
        for (o, s), fn in self.overrides:
            if o == orientation and s == at:
                return fn
        return None

    def __call__(self, x, y) -> Fraction:
        fn = self.override("v", x)
        if fn is not None:
            return fn(y)
        fn = self.override("h", y)
        if fn is not None:
            return fn(x)
        for box, (a, b, c) in self.cells:
            if box.contains(x, y):
                return a + b * x + c * y
        raise ValueError(f"cells do not cover ({x}, {y})")

    def cell_trace(self, orientation: Orientation, at) -> LineFunc:
        """The value along a whole line as given by the cells, ignoring overrides (a.e.)."""
        at = as_rat(at)
        segs = []
        for box, (a, b, c) in self.cells:
            if box.position(orientation).contains(at) and box.extent(orientation).length > 0:
                ext = box.extent(orientation)
                piece = (a + b * at, c) if orientation == "v" else (a + c * at, b)
                segs.append((ext.lo, ext.hi, piece))
        segs.sort()
        if not segs or segs[0][0] != 0 or segs[-1][1] != 1:
            raise ValueError(f"cells do not tile the {orientation} line at {at}")
        for (_, hi, _), (lo, _, _) in zip(segs, segs[1:]):
            if hi != lo:
                raise ValueError(f"cells do not tile the {orientation} line at {at}")
        return LineFunc(tuple(s[0] for s in segs[1:]), tuple(s[2] for s in segs)).simplified()

    def trace(self, orientation: Orientation, at) -> LineFunc:
        fn = self.override(orientation, as_rat(at))
        return fn if fn is not None else self.cell_trace(orientation, at)

    def line_positions(self, orientation: Orientation) -> set[Fraction]:
        """Coordinates of cell boundaries across lines of the given orientation."""
        out = set()
        for box, _ in self.cells:
            pos = box.position(orientation)
            out |= {pos.lo, pos.hi}
        return out

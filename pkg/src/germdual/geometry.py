"""Exact rational set algebra on [0, 1] and the unit square.

Sets on the line are finite unions of intervals kept in canonical form
(their connected components, sorted). Planar figures are finite unions of
axis-aligned boxes, possibly degenerate to segments or points, and are not
canonicalized: two figures are compared only through memberships,
sections and measures.

All set operations go through the same device: the endpoints of the
operands cut the axis into *elementary pieces* (single points and the open
gaps between them), membership is constant on every piece, so deciding the
piece representatives decides the whole result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Literal, Sequence

Rat = Fraction
Orientation = Literal["v", "h"]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction; floats are refused."""
    if isinstance(value, float):
        raise TypeError(f"floats are not exact: {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class Interval:
    """An interval inside [0, 1] with explicit open/closed endpoints.

    A point is an interval with ``lo == hi`` and both ends closed; empty
    intervals are not representable (use ``None`` or an empty Set1D).
    """

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rat(self.lo))
        object.__setattr__(self, "hi", as_rat(self.hi))
        if not (0 <= self.lo <= self.hi <= 1):
            raise ValueError(f"interval [{self.lo}, {self.hi}] not inside [0, 1]")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError(f"degenerate interval at {self.lo} must be closed")

    @classmethod
    def closed(cls, lo, hi) -> Interval:
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo, hi) -> Interval:
        return cls(lo, hi, False, False)

    @classmethod
    def point(cls, p) -> Interval:
        return cls(p, p, True, True)

    @classmethod
    def unit(cls) -> Interval:
        return cls(ZERO, ONE, True, True)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def representative(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, t) -> bool:
        if t < self.lo or t > self.hi:
            return False
        if t == self.lo and not self.lo_closed:
            return False
        if t == self.hi and not self.hi_closed:
            return False
        return True

    __contains__ = contains

    def intersect(self, other: Interval) -> Interval | None:
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif other.lo > self.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif other.hi < self.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
            return None
        return Interval(lo, hi, lo_closed, hi_closed)

    def closure(self) -> Interval:
        return Interval(self.lo, self.hi, True, True)

    def __str__(self) -> str:
        if self.is_point:
            return "{%s}" % self.lo
        return "%s%s, %s%s" % (
            "[" if self.lo_closed else "(",
            self.lo,
            self.hi,
            "]" if self.hi_closed else ")",
        )


def elementary_pieces(breaks: Iterable[Fraction]) -> list[Interval]:
    """Cut [0, 1] at ``breaks`` into points and open gaps, in order."""
    pts = sorted(set(breaks) | {ZERO, ONE})
    pieces = [Interval.point(pts[0])]
    for a, b in zip(pts, pts[1:]):
        pieces.append(Interval.open(a, b))
        pieces.append(Interval.point(b))
    return pieces


def assemble(pieces: Sequence[Interval], keep: Sequence[bool]) -> tuple[Interval, ...]:
    """Merge maximal runs of kept consecutive elementary pieces into intervals."""
    out = []
    run_start = None
    for i, piece in enumerate(pieces):
        if keep[i]:
            if run_start is None:
                run_start = piece
            last = piece
        elif run_start is not None:
            out.append(_span(run_start, last))
            run_start = None
    if run_start is not None:
        out.append(_span(run_start, last))
    return tuple(out)


def _span(first: Interval, last: Interval) -> Interval:
    return Interval(first.lo, last.hi, first.lo_closed, last.hi_closed)


def _endpoints(intervals: Iterable[Interval]) -> set[Fraction]:
    pts = set()
    for iv in intervals:
        pts.add(iv.lo)
        pts.add(iv.hi)
    return pts


@dataclass(frozen=True)
class Set1D:
    """Canonical finite union of intervals in [0, 1]."""

    parts: tuple[Interval, ...] = ()

    @classmethod
    def of(cls, *intervals: Interval) -> Set1D:
        return cls.union_of(intervals)

    @classmethod
    def union_of(cls, intervals: Iterable[Interval]) -> Set1D:
        intervals = list(intervals)
        if not intervals:
            return cls()
        pieces = elementary_pieces(_endpoints(intervals))
        keep = [any(iv.contains(p.representative) for iv in intervals) for p in pieces]
        return cls(assemble(pieces, keep))

    @classmethod
    def empty(cls) -> Set1D:
        return cls()

    @classmethod
    def unit(cls) -> Set1D:
        return cls((Interval.unit(),))

    def contains(self, t) -> bool:
        return any(iv.contains(t) for iv in self.parts)

    __contains__ = contains

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.parts)

    def combine(self, other: Set1D, rule: Callable[[bool, bool], bool]) -> Set1D:
        pieces = elementary_pieces(_endpoints(self.parts) | _endpoints(other.parts))
        keep = [rule(self.contains(p.representative), other.contains(p.representative)) for p in pieces]
        return Set1D(assemble(pieces, keep))

    def union(self, other: Set1D) -> Set1D:
        return self.combine(other, lambda a, b: a or b)

    def intersect(self, other: Set1D) -> Set1D:
        return self.combine(other, lambda a, b: a and b)

    def diff(self, other: Set1D) -> Set1D:
        return self.combine(other, lambda a, b: a and not b)

    def complement(self) -> Set1D:
        return Set1D.unit().diff(self)

    def measure(self) -> Fraction:
        return sum((iv.length for iv in self.parts), ZERO)

    def __str__(self) -> str:
        if not self.parts:
            return "{}"
        return " U ".join(str(iv) for iv in self.parts)


def set_algebra_1d(op: str, a: Set1D, b: Set1D) -> Set1D:
    if op == "union":
        return a.union(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "diff":
        return a.diff(b)
    raise ValueError(f"unknown 1-D set operation {op!r}")


def lebesgue1d(s: Set1D) -> Fraction:
    return s.measure()


@dataclass(frozen=True)
class Box:
    """Product of two intervals; degenerate extents give segments and points."""

    x: Interval
    y: Interval

    @classmethod
    def closed(cls, x0, x1, y0, y1) -> Box:
        return cls(Interval.closed(x0, x1), Interval.closed(y0, y1))

    def contains(self, x, y) -> bool:
        return self.x.contains(x) and self.y.contains(y)

    def extent(self, orientation: Orientation) -> Interval:
        """Extent along the line direction: y for vertical lines, x for horizontal."""
        return self.y if orientation == "v" else self.x

    def position(self, orientation: Orientation) -> Interval:
        """Extent across the lines: which vertical (x) or horizontal (y) lines it meets."""
        return self.x if orientation == "v" else self.y

    @property
    def has_area(self) -> bool:
        return self.x.length > 0 and self.y.length > 0

    def intersect(self, other: Box) -> Box | None:
        x = self.x.intersect(other.x)
        if x is None:
            return None
        y = self.y.intersect(other.y)
        if y is None:
            return None
        return Box(x, y)

    def __str__(self) -> str:
        return f"{self.x} x {self.y}"


@dataclass(frozen=True)
class Figure2D:
    """Finite union of boxes in the unit square (not canonical)."""

    boxes: tuple[Box, ...] = ()

    @classmethod
    def of(cls, *boxes: Box) -> Figure2D:
        return cls(tuple(boxes))

    @classmethod
    def empty(cls) -> Figure2D:
        return cls()

    @classmethod
    def square(cls) -> Figure2D:
        return cls((Box(Interval.unit(), Interval.unit()),))

    @classmethod
    def segment(cls, orientation: Orientation, at, lo=ZERO, hi=ONE) -> Figure2D:
        """Closed segment on the vertical line x=at or horizontal line y=at."""
        line = Interval.point(at)
        along = Interval.closed(lo, hi)
        if orientation == "v":
            return cls((Box(line, along),))
        return cls((Box(along, line),))

    def contains(self, x, y) -> bool:
        return any(b.contains(x, y) for b in self.boxes)

    def __bool__(self) -> bool:
        return bool(self.boxes)

    def section(self, orientation: Orientation, at) -> Set1D:
        return Set1D.union_of(b.extent(orientation) for b in self.boxes if b.position(orientation).contains(at))

    def union(self, other: Figure2D) -> Figure2D:
        return Figure2D(self.boxes + other.boxes)

    def intersect(self, other: Figure2D) -> Figure2D:
        out = []
        for a in self.boxes:
            for b in other.boxes:
                c = a.intersect(b)
                if c is not None:
                    out.append(c)
        return Figure2D(tuple(out))

    def complement(self) -> Figure2D:
        grid = refine_to_cells([self])
        return grid.figure(lambda x, y: not self.contains(x, y))

    def diff(self, other: Figure2D) -> Figure2D:
        grid = refine_to_cells([self, other])
        return grid.figure(lambda x, y: self.contains(x, y) and not other.contains(x, y))

    def simplified(self) -> Figure2D:
        """Same point set, rebuilt from the coordinate arrangement with merged boxes."""
        return refine_to_cells([self]).figure(self.contains)

    def __str__(self) -> str:
        if not self.boxes:
            return "{}"
        return " U ".join(f"({b})" for b in self.boxes)


def vertical_section(A: Figure2D, x) -> Set1D:
    return A.section("v", x)


def horizontal_section(A: Figure2D, y) -> Set1D:
    return A.section("h", y)


def figure_algebra(op: str, a: Figure2D, b: Figure2D | None = None) -> Figure2D:
    if op == "complement":
        return a.complement()
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if op == "union":
        return a.union(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "diff":
        return a.diff(b)
    raise ValueError(f"unknown figure operation {op!r}")


@dataclass(frozen=True)
class CellGrid:
    """Disjoint cells cut out of the square by a coordinate arrangement.

    Cells are products of elementary x-pieces and y-pieces: open rectangles,
    open edge segments and vertices.
    """

    xpieces: tuple[Interval, ...]
    ypieces: tuple[Interval, ...]

    @property
    def cells(self) -> list[Box]:
        return [Box(xp, yp) for xp in self.xpieces for yp in self.ypieces]

    def figure(self, keep: Callable[[Fraction, Fraction], bool]) -> Figure2D:
        """Union of the cells whose representative point satisfies ``keep``, merged."""
        columns = []
        for xp in self.xpieces:
            x = xp.representative
            flags = [keep(x, yp.representative) for yp in self.ypieces]
            columns.append(assemble(self.ypieces, flags))
        boxes = []
        i = 0
        n = len(self.xpieces)
        while i < n:
            col = columns[i]
            j = i
            while j + 1 < n and columns[j + 1] == col:
                j += 1
            if col:
                x = _span(self.xpieces[i], self.xpieces[j])
                boxes.extend(Box(x, y) for y in col)
            i = j + 1
        return Figure2D(tuple(boxes))


def refine_to_cells(figures: Iterable[Figure2D], xbreaks=(), ybreaks=()) -> CellGrid:
    """Arrangement of all box coordinates; every input figure is a union of its cells."""
    xs = set(as_rat(b) for b in xbreaks)
    ys = set(as_rat(b) for b in ybreaks)
    for fig in figures:
        for box in fig.boxes:
            xs |= {box.x.lo, box.x.hi}
            ys |= {box.y.lo, box.y.hi}
    return CellGrid(tuple(elementary_pieces(xs)), tuple(elementary_pieces(ys)))


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The smallest-denominator rational in the open interval (lo, hi), for 0 <= lo < hi; it is unique."""
    whole = lo.__floor__()
    if whole + 1 < hi:
        return Fraction(whole + 1)
    lo, hi = lo - whole, hi - whole
    if lo == 0:
        return whole + Fraction(1, (1 / hi).__floor__() + 1)
    return whole + 1 / _simplest_between(1 / hi, 1 / lo)


def simplest_rational_in(lo: Fraction, hi: Fraction, avoid: Iterable[Fraction] = ()) -> Fraction:
    """Smallest-denominator rational strictly between ``lo`` and ``hi`` not in ``avoid``.

    Ties are broken by the smaller numerator, so the choice is deterministic.
    """
    if not lo < hi:
        raise ValueError(f"empty open interval ({lo}, {hi})")
    if lo < 0:
        raise ValueError("interval must lie in [0, inf)")
    avoid = frozenset(avoid)
    r = _simplest_between(lo, hi)
    if r not in avoid:
        return r
    left = simplest_rational_in(lo, r, avoid)
    right = simplest_rational_in(r, hi, avoid)
    return min(left, right, key=lambda v: (v.denominator, v.numerator))

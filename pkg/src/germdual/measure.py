"""The two measures on figures and the sigma-finiteness classifier.

``mu_grid`` charges a figure the total length of all its vertical and all
its horizontal sections; ``mu_lines`` only the horizontal ones. Inside the
box class a section can have positive length only along the edges of a
degenerate box (finitely many lines) or across a box with positive area
(a whole interval of lines, hence infinitely many terms and measure
infinity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .geometry import ZERO, Figure2D, Orientation, Set1D

INF = math.inf
ExtRat = Union[Fraction, float]  # the only float ever produced is INF


@dataclass(frozen=True)
class CriticalLines:
    """Lines on which a figure has sections of positive length.

    ``vertical_points`` are isolated x with positive vertical section;
    ``vertical_intervals`` is the set of x swept by positive-area boxes.
    The horizontal fields mirror these.
    """

    vertical_points: tuple[Fraction, ...] = ()
    vertical_intervals: Set1D = Set1D()
    horizontal_points: tuple[Fraction, ...] = ()
    horizontal_intervals: Set1D = Set1D()

    def points(self, orientation: Orientation) -> tuple[Fraction, ...]:
        return self.vertical_points if orientation == "v" else self.horizontal_points

    def intervals(self, orientation: Orientation) -> Set1D:
        return self.vertical_intervals if orientation == "v" else self.horizontal_intervals


def _critical(A: Figure2D, orientation: Orientation) -> tuple[tuple[Fraction, ...], Set1D]:
    swept = Set1D.union_of(b.position(orientation) for b in A.boxes if b.has_area)
    points = set()
    for b in A.boxes:
        pos = b.position(orientation)
        if pos.is_point and b.extent(orientation).length > 0 and not swept.contains(pos.lo):
            points.add(pos.lo)
    return tuple(sorted(points)), swept


def critical_lines(A: Figure2D) -> CriticalLines:
    vp, vi = _critical(A, "v")
    hp, hi = _critical(A, "h")
    return CriticalLines(vp, vi, hp, hi)


def _section_sum(A: Figure2D, orientation: Orientation, points) -> Fraction:
    return sum((A.section(orientation, s).measure() for s in points), ZERO)


def mu_grid(A: Figure2D) -> ExtRat:
    cl = critical_lines(A)
    if cl.vertical_intervals or cl.horizontal_intervals:
        return INF
    return _section_sum(A, "v", cl.vertical_points) + _section_sum(A, "h", cl.horizontal_points)


def mu_lines(A: Figure2D) -> ExtRat:
    cl = critical_lines(A)
    if cl.horizontal_intervals:
        return INF
    return _section_sum(A, "h", cl.horizontal_points)


def measure_of(A: Figure2D, measure: str = "grid") -> ExtRat:
    if measure == "grid":
        return mu_grid(A)
    if measure == "lines":
        return mu_lines(A)
    raise ValueError(f"unknown measure {measure!r}")


def sigma_finite(A: Figure2D) -> bool:
    """True iff ``A`` holds no box of positive area (the same test serves both measures)."""
    return not any(b.has_area for b in A.boxes)


def line_orientations(measure: str) -> tuple[Orientation, ...]:
    """Which families of lines carry mass under ``measure``."""
    if measure == "grid":
        return ("v", "h")
    if measure == "lines":
        return ("h",)
    raise ValueError(f"unknown measure {measure!r}")

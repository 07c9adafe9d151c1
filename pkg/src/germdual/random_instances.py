"""Seeded generators of random figures, functions, germs and candidates.

Endpoints are drawn from rationals with denominators dividing 12, so every
elementary piece of an arrangement contains a multiple of 1/24; tests use
that grid as a brute-force membership oracle.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .functions import CandidateGlobal, LineFunc, SimpleFunc
from .geometry import Box, Figure2D, Interval, Set1D
from .germs import Germ, LineRule

DENOMS = (1, 2, 3, 4, 6)
SMALL = tuple(Fraction(n, d) for d in (1, 2) for n in range(-4, 5))


def rand_unit(rng: random.Random) -> Fraction:
    d = rng.choice(DENOMS)
    return Fraction(rng.randint(0, d), d)


def rand_coeff(rng: random.Random, pool=SMALL) -> Fraction:
    return rng.choice(pool)


def random_interval(rng: random.Random, point_prob=0.2) -> Interval:
    if rng.random() < point_prob:
        return Interval.point(rand_unit(rng))
    while True:
        lo, hi = sorted((rand_unit(rng), rand_unit(rng)))
        if lo < hi:
            return Interval(lo, hi, rng.random() < 0.5, rng.random() < 0.5)


def random_set1d(rng: random.Random, max_parts=3) -> Set1D:
    return Set1D.union_of(random_interval(rng) for _ in range(rng.randint(0, max_parts)))


def random_box(rng: random.Random, kind: str | None = None) -> Box:
    kind = kind or rng.choice(("area", "vseg", "hseg", "point"))
    line = lambda: Interval.point(rand_unit(rng))
    span = lambda: random_interval(rng, point_prob=0)
    if kind == "area":
        return Box(span(), span())
    if kind == "vseg":
        return Box(line(), span())
    if kind == "hseg":
        return Box(span(), line())
    return Box(line(), line())


def random_figure(rng: random.Random, sigma_finite=False, max_boxes=3) -> Figure2D:
    kinds = ("vseg", "hseg", "point") if sigma_finite else ("area", "vseg", "hseg", "point")
    return Figure2D(tuple(random_box(rng, rng.choice(kinds)) for _ in range(rng.randint(0, max_boxes))))


def random_simple_func(rng: random.Random, sigma_finite=True, max_terms=3) -> SimpleFunc:
    """Random simple function; sigma-finite ones may still contain cancelling area terms."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        fig = random_figure(rng, sigma_finite=sigma_finite, max_boxes=2)
        terms.append((rand_coeff(rng), fig))
    if sigma_finite and rng.random() < 0.2:
        blob = Figure2D((random_box(rng, "area"),))
        c = rand_coeff(rng)
        terms += [(c, blob), (-c, blob)]
    return SimpleFunc(tuple(terms))


def random_breaks(rng: random.Random, max_breaks=2) -> tuple[Fraction, ...]:
    pts = {rand_unit(rng) for _ in range(rng.randint(0, max_breaks))}
    return tuple(sorted(p for p in pts if 0 < p < 1))


def random_linefunc(rng: random.Random, with_points=False) -> LineFunc:
    breaks = random_breaks(rng)
    pieces = tuple((rand_coeff(rng), rand_coeff(rng)) for _ in range(len(breaks) + 1))
    points = ()
    if with_points and rng.random() < 0.5:
        points = ((rand_unit(rng), rand_coeff(rng)),)
    return LineFunc(breaks, pieces, points)


def random_rule(rng: random.Random, affine_in_s=True) -> LineRule:
    breaks = random_breaks(rng)
    pieces = []
    for _ in range(len(breaks) + 1):
        a0, b0 = rand_coeff(rng), rand_coeff(rng)
        a1 = rand_coeff(rng) if affine_in_s and rng.random() < 0.5 else Fraction(0)
        b1 = rand_coeff(rng) if affine_in_s and rng.random() < 0.5 else Fraction(0)
        pieces.append((a0, a1, b0, b1))
    return LineRule(breaks, tuple(pieces))


def random_germ(rng: random.Random, max_exceptions=2) -> Germ:
    def exc():
        keys = {rand_unit(rng) for _ in range(rng.randint(0, max_exceptions))}
        return {k: random_linefunc(rng, with_points=True) for k in keys}

    return Germ(random_rule(rng), random_rule(rng), exc(), exc())


COEFF_POOL = tuple(Fraction(c) for c in ("-1", "-1/2", "0", "1/2", "1"))


def random_candidate(rng: random.Random, max_overrides=2) -> CandidateGlobal:
    """Random per-cell affine candidate on a random grid with at most ``max_overrides`` line overrides."""
    xb, yb = random_breaks(rng), random_breaks(rng)
    per_cell = {}

    def coeffs(box):
        key = (box.x, box.y)
        if key not in per_cell:
            per_cell[key] = tuple(rng.choice(COEFF_POOL) for _ in range(3))
        return per_cell[key]

    overrides = {}
    for _ in range(rng.randint(0, max_overrides)):
        overrides[(rng.choice("vh"), rand_unit(rng))] = random_linefunc(rng)
    return CandidateGlobal.from_grid(xb, yb, coeffs, overrides.items())

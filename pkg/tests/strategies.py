from fractions import Fraction

from hypothesis import strategies as st

from germdual.geometry import Box, Figure2D, Interval, Set1D

unit12 = st.integers(0, 12).map(lambda k: Fraction(k, 12))
coeffs = st.integers(-6, 6).map(lambda k: Fraction(k, 2))


@st.composite
def intervals(draw, allow_point=True):
    lo, hi = sorted((draw(unit12), draw(unit12)))
    if lo == hi:
        if allow_point:
            return Interval.point(lo)
        hi = lo + Fraction(1, 12) if lo < 1 else lo
        lo = hi - Fraction(1, 12)
    return Interval(lo, hi, draw(st.booleans()), draw(st.booleans()))


set1ds = st.lists(intervals(), max_size=4).map(Set1D.union_of)


@st.composite
def boxes(draw, sigma_finite=False):
    kinds = ["vseg", "hseg", "point"] + ([] if sigma_finite else ["area"])
    kind = draw(st.sampled_from(kinds))
    span = intervals(allow_point=False)
    line = unit12.map(Interval.point)
    if kind == "area":
        return Box(draw(span), draw(span))
    if kind == "vseg":
        return Box(draw(line), draw(span))
    if kind == "hseg":
        return Box(draw(span), draw(line))
    return Box(draw(line), draw(line))


def figures(sigma_finite=False, max_boxes=3):
    return st.lists(boxes(sigma_finite), max_size=max_boxes).map(lambda bs: Figure2D(tuple(bs)))

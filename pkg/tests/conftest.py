"""Shared brute-force oracles.

None of these go through the package's arrangement, critical-line or
corner machinery: they sample memberships on fixed rational grids, merge
intervals by a plain sweep, integrate with sympy, and recover affine
pieces from point evaluations.
"""

from fractions import Fraction

import pytest
import sympy

from germdual.measure import INF

ACCEPTANCE_RESULTS = []


def farey(n):
    return sorted({Fraction(p, q) for q in range(1, n + 1) for p in range(q + 1)})


FAREY64 = farey(64)
# Random endpoints have denominators dividing 12; multiples of 1/24 hit every elementary piece.
GRID24 = [Fraction(k, 24) for k in range(25)]
GRID2D = [(x, y) for x in GRID24 for y in GRID24]


def merged_length(intervals):
    """Total length of a union of (lo, hi) pairs by a sorted sweep."""
    total, cur_lo, cur_hi = Fraction(0), None, None
    for lo, hi in sorted(intervals):
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    if cur_hi is not None:
        total += cur_hi - cur_lo
    return total


def section_length(A, orientation, s):
    spans = []
    for b in A.boxes:
        pos, ext = (b.x, b.y) if orientation == "v" else (b.y, b.x)
        if pos.contains(s):
            spans.append((ext.lo, ext.hi))
    return merged_length(spans)


def oracle_mu(A, orientations=("v", "h")):
    """Enumerate box-coordinate lines and the gaps between them; any positive gap line means infinity."""
    total = Fraction(0)
    for o in orientations:
        coords = {Fraction(0), Fraction(1)}
        for b in A.boxes:
            pos = b.x if o == "v" else b.y
            coords |= {pos.lo, pos.hi}
        coords = sorted(coords)
        for lo, hi in zip(coords, coords[1:]):
            if section_length(A, o, (lo + hi) / 2) > 0:
                return INF
        total += sum(section_length(A, o, s) for s in coords)
    return total


def affine_ends(evaluate, lo, hi, avoid=()):
    """Values at ``lo`` and ``hi`` of a function known to be affine on (lo, hi), from two interior samples."""
    picks = []
    k = 1
    while len(picks) < 2:
        t = lo + (hi - lo) * Fraction(k, 7)
        if t not in avoid:
            picks.append(t)
        k += 1
    (t1, t2) = picks
    v1, v2 = evaluate(t1), evaluate(t2)
    slope = (v2 - v1) / (t2 - t1)
    return v1 + slope * (lo - t1), v1 + slope * (hi - t1)


def oracle_line_sup(fn, avoid=()):
    cuts = [Fraction(0), *fn.breaks, Fraction(1)]
    pts = {t for t, _ in fn.points} | set(avoid)
    best = Fraction(0)
    for lo, hi in zip(cuts, cuts[1:]):
        a, b = affine_ends(fn, lo, hi, pts)
        best = max(best, abs(a), abs(b))
    return best


def oracle_germ_norm(G, orientations=("v", "h")):
    """Black-box evaluation of line values, extrapolated to piece corners in both line position and t."""
    best = Fraction(0)
    for o in orientations:
        exc = G.exceptions(o)
        for fn in exc.values():
            best = max(best, oracle_line_sup(fn))
        breaks = G.default(o).breaks
        cuts = [Fraction(0), *breaks, Fraction(1)]
        for lo, hi in zip(cuts, cuts[1:]):
            for t_end in (0, 1):

                def along_s(s):
                    return affine_ends(G.line(o, s), lo, hi)[t_end]

                v0, v1 = affine_ends(along_s, Fraction(0), Fraction(1), set(exc))
                best = max(best, abs(v0), abs(v1))
    return best


_t = sympy.Symbol("t")


def sympy_line_integral(value, weight, lo, hi):
    """Integral of the constant ``value`` times ``weight(t)`` over [lo, hi], by sympy."""
    expr = sympy.Rational(value.numerator, value.denominator) * weight(_t)
    res = sympy.integrate(expr, (_t, sympy.Rational(lo.numerator, lo.denominator), sympy.Rational(hi.numerator, hi.denominator)))
    return Fraction(int(res.p), int(res.q))


@pytest.fixture
def acceptance():
    def record(number, name, passed, detail=""):
        ACCEPTANCE_RESULTS.append((number, name, passed, detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} [{number}] {name}" + (f" ({detail})" if detail else ""))

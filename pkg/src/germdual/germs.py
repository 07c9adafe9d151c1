"""Germs: consistent families of bounded functions indexed by sigma-finite sets.

In the box class a sigma-finite set lives on finitely many vertical and
horizontal lines, so a germ is pinned down by what it does on every single
line. A ``Germ`` stores that intensionally: one default rule per line
family, whose coefficients may depend affinely on the line position, plus
finitely many exceptional lines. ``restrict`` materializes the member
``g_A`` for a concrete set ``A``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NotSigmaFinite
from .functions import LineFunc, _check_breaks, _cuts, linf_line
from .geometry import ONE, ZERO, Figure2D, Interval, Orientation, as_rat
from .measure import critical_lines, line_orientations, sigma_finite

RuleCoeffs = tuple[Fraction, Fraction, Fraction, Fraction]
ORIENTATIONS: tuple[Orientation, Orientation] = ("v", "h")


@dataclass(frozen=True)
class LineRule:
    """Value ``(a0 + a1*s) + (b0 + b1*s)*t`` at position ``t`` on the line indexed by ``s``.

    Pieces split the ``t`` axis exactly like ``LineFunc`` pieces.
    """

    breaks: tuple[Fraction, ...] = ()
    pieces: tuple[RuleCoeffs, ...] = ((ZERO, ZERO, ZERO, ZERO),)

    def __post_init__(self):
        object.__setattr__(self, "breaks", tuple(as_rat(b) for b in self.breaks))
        object.__setattr__(self, "pieces", tuple(tuple(as_rat(c) for c in p) for p in self.pieces))
        _check_breaks(self.breaks)
        if len(self.pieces) != len(self.breaks) + 1:
            raise ValueError("a LineRule needs exactly one piece more than breakpoints")
        if any(len(p) != 4 for p in self.pieces):
            raise ValueError("rule pieces carry four coefficients (a0, a1, b0, b1)")

    @classmethod
    def zero(cls) -> LineRule:
        return cls()

    @classmethod
    def constant(cls, c) -> LineRule:
        return cls((), ((as_rat(c), ZERO, ZERO, ZERO),))

    @classmethod
    def along(cls) -> LineRule:
        """The rule ``t``: the coordinate running along the line."""
        return cls((), ((ZERO, ZERO, ONE, ZERO),))

    @classmethod
    def across(cls) -> LineRule:
        """The rule ``s``: the position of the line itself."""
        return cls((), ((ZERO, ONE, ZERO, ZERO),))

    def coeffs_at(self, t) -> RuleCoeffs:
        return self.pieces[bisect_right(self.breaks, t)]

    def value(self, s, t) -> Fraction:
        a0, a1, b0, b1 = self.coeffs_at(t)
        return (a0 + a1 * s) + (b0 + b1 * s) * t

    def at(self, s) -> LineFunc:
        s = as_rat(s)
        return LineFunc(self.breaks, tuple((a0 + a1 * s, b0 + b1 * s) for a0, a1, b0, b1 in self.pieces)).simplified()

    def segments(self):
        cuts = (ZERO,) + self.breaks + (ONE,)
        for (lo, hi), p in zip(zip(cuts, cuts[1:]), self.pieces):
            yield lo, hi, p

    def simplified(self) -> LineRule:
        breaks, pieces = [], [self.pieces[0]]
        for b, piece in zip(self.breaks, self.pieces[1:]):
            if piece != pieces[-1]:
                breaks.append(b)
                pieces.append(piece)
        return LineRule(tuple(breaks), tuple(pieces))

    def __add__(self, other: LineRule) -> LineRule:
        cuts = _cuts(self.breaks + other.breaks)
        pieces = []
        for lo, hi in zip(cuts, cuts[1:]):
            m = (lo + hi) / 2
            pieces.append(tuple(p + q for p, q in zip(self.coeffs_at(m), other.coeffs_at(m))))
        return LineRule(tuple(cuts[1:-1]), tuple(pieces)).simplified()

    def scaled(self, c) -> LineRule:
        c = as_rat(c)
        return LineRule(self.breaks, tuple(tuple(c * k for k in p) for p in self.pieces)).simplified()

    def sup_abs(self) -> Fraction:
        """Sup of ``|value|`` over ``s`` in [0, 1] and each piece; affine in each variable, so a corner wins."""
        return max(abs(v) for _, _, _, v in self.corners())

    def corners(self):
        """Yield ``(piece_index, s, t, value)`` at every corner of every piece's closed rectangle."""
        for k, (lo, hi, (a0, a1, b0, b1)) in enumerate(self.segments()):
            for s in (ZERO, ONE):
                for t in (lo, hi):
                    yield k, s, t, (a0 + a1 * s) + (b0 + b1 * s) * t


def _exceptions(items) -> tuple[tuple[Fraction, LineFunc], ...]:
    pairs = items.items() if isinstance(items, dict) else items
    out = tuple(sorted(((as_rat(s), fn) for s, fn in pairs), key=lambda kv: kv[0]))
    keys = [s for s, _ in out]
    if len(set(keys)) != len(keys):
        raise ValueError("exception lines must be pairwise distinct")
    if any(not 0 <= s <= 1 for s in keys):
        raise ValueError("exception lines must lie in [0, 1]")
    return out


@dataclass(frozen=True)
class Germ:
    """Line assignment describing a germ ``(g_A)`` over all sigma-finite ``A``."""

    vertical: LineRule = LineRule()
    horizontal: LineRule = LineRule()
    vertical_exceptions: tuple[tuple[Fraction, LineFunc], ...] = ()
    horizontal_exceptions: tuple[tuple[Fraction, LineFunc], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertical_exceptions", _exceptions(self.vertical_exceptions))
        object.__setattr__(self, "horizontal_exceptions", _exceptions(self.horizontal_exceptions))

    @classmethod
    def zero(cls) -> Germ:
        return cls()

    def default(self, orientation: Orientation) -> LineRule:
        return self.vertical if orientation == "v" else self.horizontal

    def exceptions(self, orientation: Orientation) -> dict[Fraction, LineFunc]:
        return dict(self.vertical_exceptions if orientation == "v" else self.horizontal_exceptions)

    def line(self, orientation: Orientation, s) -> LineFunc:
        s = as_rat(s)
        fn = self.exceptions(orientation).get(s)
        return fn if fn is not None else self.default(orientation).at(s)


@dataclass(frozen=True)
class RestrictedGerm:
    """A concrete ``g_A``: line functions on the critical lines of ``A``, zero elsewhere.

    Where a vertical and a horizontal line of ``A`` cross, the value is 0.
    """

    vertical: tuple[tuple[Fraction, LineFunc], ...] = ()
    horizontal: tuple[tuple[Fraction, LineFunc], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertical", _exceptions(self.vertical))
        object.__setattr__(self, "horizontal", _exceptions(self.horizontal))

    def lines(self, orientation: Orientation) -> dict[Fraction, LineFunc]:
        return dict(self.vertical if orientation == "v" else self.horizontal)

    def line(self, orientation: Orientation, s) -> LineFunc:
        return self.lines(orientation).get(as_rat(s), LineFunc.zero())

    def __call__(self, x, y) -> Fraction:
        v = self.lines("v")
        h = self.lines("h")
        if x in v and y in h:
            return ZERO
        if x in v:
            return v[x](y)
        if y in h:
            return h[y](x)
        return ZERO

    def linf(self) -> Fraction:
        return max((linf_line(fn) for _, fn in self.vertical + self.horizontal), default=ZERO)


@dataclass(frozen=True)
class RawGermTable:
    """Finitely many pairs ``(A, g_A)`` whose mutual consistency is not yet known."""

    entries: tuple[tuple[Figure2D, RestrictedGerm], ...] = ()


def restrict(G: Germ, A: Figure2D) -> RestrictedGerm:
    if not sigma_finite(A):
        raise NotSigmaFinite(f"{A} contains a box of positive area")
    cl = critical_lines(A)
    return RestrictedGerm(
        tuple((x, G.line("v", x)) for x in cl.vertical_points),
        tuple((y, G.line("h", y)) for y in cl.horizontal_points),
    )


def germ_norm(G: Germ, measure: str = "grid") -> Fraction:
    """``sup_A ||g_A||_inf``; under the lines measure only horizontal lines carry mass."""
    best = ZERO
    for o in line_orientations(measure):
        best = max(best, G.default(o).sup_abs())
        for fn in G.exceptions(o).values():
            best = max(best, linf_line(fn))
    return best


def _merge_exceptions(G: Germ, H: Germ, orientation: Orientation, op) -> dict:
    keys = set(G.exceptions(orientation)) | set(H.exceptions(orientation))
    return {k: op(G.line(orientation, k), H.line(orientation, k)) for k in keys}


def add_germ(G: Germ, H: Germ) -> Germ:
    return Germ(
        G.vertical + H.vertical,
        G.horizontal + H.horizontal,
        _merge_exceptions(G, H, "v", lambda p, q: p + q),
        _merge_exceptions(G, H, "h", lambda p, q: p + q),
    )


def scale_germ(c, G: Germ) -> Germ:
    return Germ(
        G.vertical.scaled(c),
        G.horizontal.scaled(c),
        {k: fn.scaled(c) for k, fn in G.vertical_exceptions},
        {k: fn.scaled(c) for k, fn in G.horizontal_exceptions},
    )


def neg_germ(G: Germ) -> Germ:
    return scale_germ(-1, G)


def eq_ae_germ(G: Germ, H: Germ) -> bool:
    for o in ORIENTATIONS:
        diff = G.default(o) + H.default(o).scaled(-1)
        if any(c != 0 for p in diff.pieces for c in p):
            return False
        for k in set(G.exceptions(o)) | set(H.exceptions(o)):
            if not G.line(o, k).ae_equal(H.line(o, k)):
                return False
    return True


@dataclass(frozen=True)
class ConsistencyWitness:
    """Entries ``i`` and ``j`` disagree on ``interval`` of the given line, inside ``A_i`` and ``A_j``."""

    i: int
    j: int
    orientation: Orientation
    line: Fraction
    interval: Interval


def consistency_check(table: RawGermTable | Iterable) -> ConsistencyWitness | None:
    """Return the first pairwise disagreement of positive length, or None if consistent."""
    entries = table.entries if isinstance(table, RawGermTable) else tuple(table)
    for k, (A, _) in enumerate(entries):
        if not sigma_finite(A):
            raise NotSigmaFinite(f"table entry {k} is not sigma-finite")
    crit = [critical_lines(A) for A, _ in entries]
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            (A, gA), (B, gB) = entries[i], entries[j]
            for o in ORIENTATIONS:
                for s in sorted(set(crit[i].points(o)) & set(crit[j].points(o))):
                    over = A.section(o, s).intersect(B.section(o, s))
                    gap = gA.line(o, s).first_difference(gB.line(o, s), over)
                    if gap is not None:
                        return ConsistencyWitness(i, j, o, s, gap)
    return None

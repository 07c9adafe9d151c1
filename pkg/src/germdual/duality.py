"""The pairing between germs and integrable simple functions.

``pair(G, f)`` integrates ``f`` against the member of ``G`` that lives on
the support of ``f``. ``norm_witness`` produces unit-norm functions whose
pairing comes within ``eps`` of the germ norm, which is the constructive
half of the statement that the functional norm equals the germ norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotIntegrable, Unbounded, ZeroGerm
from .functions import SimpleFunc, integrate_line, l1_norm, restrict_line, support
from .geometry import ZERO, Figure2D, Orientation, as_rat, simplest_rational_in
from .germs import Germ, LineRule, germ_norm, restrict
from .measure import INF, line_orientations


def pair(G: Germ, f: SimpleFunc, measure: str = "grid") -> Fraction:
    """``T f = integral of f * g_F`` with ``F = {f != 0}``."""
    if l1_norm(f, measure) == INF:
        raise NotIntegrable("f has infinite L1 norm (support is not sigma-finite)")
    R = restrict(G, support(f))
    total = ZERO
    for o in line_orientations(measure):
        for s, fn in R.lines(o).items():
            total += integrate_line(restrict_line(f, o, s), fn)
    return total


def _sign(v: Fraction) -> int:
    return 1 if v >= 0 else -1


def _superlevel_piece(a, b, lo, hi, sign, level) -> tuple[Fraction, Fraction]:
    """Sub-interval of ``[lo, hi]`` where ``sign*(a + b*t) >= level`` (assumed nonempty)."""
    sb = sign * b
    if sb == 0:
        return lo, hi
    bound = (level - sign * a) / sb
    if sb > 0:
        return max(lo, bound), hi
    return lo, min(hi, bound)


def _line_near(rule: LineRule, piece: int, s_star, t_star, sign, level, avoid) -> Fraction:
    """A line index, not in ``avoid``, where the rule still reaches ``level`` at ``t_star``."""
    if s_star not in avoid:
        return s_star
    a0, a1, b0, b1 = rule.pieces[piece]
    const, slope = a0 + b0 * t_star, a1 + b1 * t_star
    lo, hi = _superlevel_piece(const, slope, ZERO, Fraction(1), sign, level)
    return simplest_rational_in(lo, hi, avoid)


def norm_witness(G: Germ, eps, measure: str = "grid") -> SimpleFunc:
    """Unit-L1 ``f`` with ``|pair(G, f)| >= germ_norm(G) - eps``, all in exact rationals."""
    eps = as_rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    N = germ_norm(G, measure)
    if N == 0:
        raise ZeroGerm("the zero germ has no norming function")
    target = N - eps
    for o in line_orientations(measure):
        rule = G.default(o)
        avoid = set(G.exceptions(o))
        for k, s_star, t_star, v in rule.corners():
            if abs(v) != N:
                continue
            sign = _sign(v)
            s = _line_near(rule, k, s_star, t_star, sign, N - eps / 2, avoid)
            lo, hi, _ = list(rule.segments())[k]
            a0, a1, b0, b1 = rule.pieces[k]
            return _segment_witness(o, s, a0 + a1 * s, b0 + b1 * s, lo, hi, sign, target)
        for s, fn in G.exceptions(o).items():
            for lo, hi, a, b in fn.segments():
                for t in (lo, hi):
                    if abs(a + b * t) == N:
                        return _segment_witness(o, s, a, b, lo, hi, _sign(a + b * t), target)
    raise AssertionError("germ norm not attained at any corner")


def _segment_witness(o: Orientation, s, a, b, lo, hi, sign, level) -> SimpleFunc:
    jl, jh = _superlevel_piece(a, b, lo, hi, sign, level)
    return SimpleFunc.indicator(Figure2D.segment(o, s, jl, jh), Fraction(sign) / (jh - jl))


@dataclass(frozen=True)
class LineFormFunctional:
    """``f -> sum over lines of the integral of f against per-line weights``.

    This is how both functionals of interest are presented: a weight on
    every line of each family, under either the grid or the lines measure.
    Evaluation walks the lines where ``f`` has degenerate boxes instead of
    going through the support, so it is an independent route to ``pair``.
    """

    weights: Germ
    measure: str = "grid"

    def __call__(self, f: SimpleFunc) -> Fraction:
        if l1_norm(f, self.measure) == INF:
            raise NotIntegrable("f has infinite L1 norm (support is not sigma-finite)")
        total = ZERO
        for o in line_orientations(self.measure):
            lines = set()
            for _, fig in f.terms:
                for box in fig.boxes:
                    pos = box.position(o)
                    if pos.is_point and box.extent(o).length > 0:
                        lines.add(pos.lo)
            for s in sorted(lines):
                total += integrate_line(restrict_line(f, o, s), self.weights.line(o, s))
        return total


def _validated_norm(G: Germ, measure: str) -> Fraction:
    coeffs = [c for o in ("v", "h") for p in G.default(o).pieces for c in p]
    coeffs += [c for o in ("v", "h") for fn in G.exceptions(o).values() for p in fn.pieces for c in p]
    if not all(isinstance(c, Fraction) for c in coeffs):
        raise Unbounded("line weights must be exact finite rationals")
    return germ_norm(G, measure)


def functional_from_germ(G: Germ, measure: str = "grid") -> LineFormFunctional:
    _validated_norm(G, measure)
    return LineFormFunctional(G, measure)


def germ_from_line_form(T: LineFormFunctional) -> Germ:
    """The germ a line-form functional is given by; lines carrying no mass are zeroed."""
    _validated_norm(T.weights, T.measure)
    W = T.weights
    if T.measure == "lines":
        return Germ(LineRule.zero(), W.horizontal, (), W.horizontal_exceptions)
    return W

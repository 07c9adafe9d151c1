import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import GRID24, oracle_germ_norm, oracle_line_sup
from germdual.errors import NotSigmaFinite
from germdual.functions import LineFunc
from germdual.geometry import Box, Figure2D, Interval
from germdual.germs import (
    Germ,
    LineRule,
    RawGermTable,
    add_germ,
    consistency_check,
    eq_ae_germ,
    germ_norm,
    neg_germ,
    restrict,
    scale_germ,
)
from germdual.laws import ae_variant, germ_laws
from germdual.measure import critical_lines
from germdual.random_instances import random_figure, random_germ

F = Fraction
HALF, THIRD = F(1, 2), F(1, 3)
seeds = st.integers(0, 2**32).map(random.Random)


def test_rule_shapes():
    assert LineRule.along().value(F(1, 5), F(3, 7)) == F(3, 7)
    assert LineRule.across().value(F(1, 5), F(3, 7)) == F(1, 5)
    assert LineRule.constant(4).value(0, 1) == 4
    assert LineRule.along().at(F(1, 5)).ae_equal(LineFunc.identity())


def test_exception_lines_override_default():
    G = Germ(LineRule.along(), LineRule.along(), {HALF: LineFunc.constant(3)})
    assert G.line("v", HALF)(F(1, 4)) == 3
    assert G.line("v", THIRD)(F(1, 4)) == F(1, 4)
    assert germ_norm(G) == 3


def test_restriction_of_cross_sets_crossing_to_zero():
    G = Germ(LineRule.along(), LineRule.along())
    A = Figure2D.segment("v", HALF).union(Figure2D.segment("h", THIRD))
    R = restrict(G, A)
    assert R(HALF, F(3, 4)) == F(3, 4)
    assert R(F(1, 4), THIRD) == F(1, 4)
    assert R(HALF, THIRD) == 0
    assert R.linf() == 1


def test_restrict_refuses_area():
    with pytest.raises(NotSigmaFinite):
        restrict(Germ.zero(), Figure2D.square())


def test_norm_only_counts_horizontal_lines_under_lines_measure():
    G = Germ(LineRule.constant(5), LineRule.along())
    assert germ_norm(G) == 5
    assert germ_norm(G, "lines") == 1


@given(seeds)
def test_norm_matches_black_box_oracle(rng):
    G = random_germ(rng)
    assert germ_norm(G) == oracle_germ_norm(G)


@given(seeds)
def test_norm_is_sup_over_segment_battery(rng):
    G = random_germ(rng)
    best = F(0)
    for o in "vh":
        exc = G.exceptions(o)
        for s in set(GRID24) | set(exc):
            best = max(best, oracle_line_sup(restrict(G, Figure2D.segment(o, s)).line(o, s)))
    N = germ_norm(G)
    assert best <= N
    ends_free = all(not ({F(0), F(1)} & set(G.exceptions(o))) for o in "vh")
    if ends_free:
        assert best == N


@given(seeds)
def test_restrictions_are_compatible(rng):
    G = random_germ(rng)
    A = random_figure(rng, sigma_finite=True)
    B = A.union(random_figure(rng, sigma_finite=True))
    RA, RB = restrict(G, A), restrict(G, B)
    cl = critical_lines(A)
    for o in "vh":
        for s in cl.points(o):
            assert RA.line(o, s).ae_equal(RB.line(o, s), A.section(o, s))


@given(seeds)
def test_equivalent_variants(rng):
    G = random_germ(rng)
    Gs = ae_variant(G, rng)
    assert eq_ae_germ(G, Gs)
    assert germ_norm(Gs) == germ_norm(G)
    assert eq_ae_germ(add_germ(G, neg_germ(Gs)), Germ.zero())


@given(seeds)
def test_changing_a_default_breaks_equivalence(rng):
    G = random_germ(rng)
    H = Germ(G.vertical + LineRule.constant(1), G.horizontal, G.vertical_exceptions, G.horizontal_exceptions)
    assert not eq_ae_germ(G, H)


def test_scaling_by_zero_gives_zero_norm():
    G = random_germ(random.Random(3))
    assert germ_norm(scale_germ(0, G)) == 0


def test_library_law_driver_passes():
    for law in germ_laws(seed=11, cases=60):
        assert law.passed, (law.name, law.failures[:3])


def test_consistency_detects_disagreement():
    G = Germ(LineRule.along(), LineRule.along())
    A = Figure2D.segment("v", HALF)
    B = Figure2D.of(Box(Interval.point(HALF), Interval.closed(THIRD, 1)))
    bad = Germ(LineRule.constant(2), LineRule.along())
    table = RawGermTable(((A, restrict(G, A)), (B, restrict(bad, B))))
    w = consistency_check(table)
    assert w is not None
    assert (w.i, w.j, w.orientation, w.line) == (0, 1, "v", HALF)
    assert w.interval.lo >= THIRD and w.interval.length > 0


def test_consistency_ignores_null_overlaps():
    G = Germ(LineRule.along(), LineRule.along())
    other = Germ(LineRule.constant(9), LineRule.constant(9))
    A = Figure2D.segment("v", HALF)
    B = Figure2D.segment("h", THIRD)
    # the sets meet in a single point, so any values are consistent
    assert consistency_check([(A, restrict(G, A)), (B, restrict(other, B))]) is None

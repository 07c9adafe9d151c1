from fractions import Fraction

import pytest
from hypothesis import given

from conftest import oracle_mu
from germdual.geometry import Box, Figure2D, Interval
from germdual.measure import INF, critical_lines, measure_of, mu_grid, mu_lines, sigma_finite
from strategies import figures

F = Fraction
HALF, THIRD = F(1, 2), F(1, 3)


def cross():
    return Figure2D.segment("v", HALF).union(Figure2D.segment("h", THIRD))


def test_cross_and_square():
    assert mu_grid(cross()) == 2
    assert mu_lines(cross()) == 1
    assert mu_grid(Figure2D.square()) == INF
    assert not sigma_finite(Figure2D.square())
    assert sigma_finite(cross())


def test_points_have_measure_zero():
    pt = Figure2D.of(Box(Interval.point(HALF), Interval.point(THIRD)))
    assert mu_grid(pt) == 0


def test_overlapping_segments_counted_once():
    A = Figure2D.segment("v", HALF, 0, HALF).union(Figure2D.segment("v", HALF, THIRD, 1))
    assert mu_grid(A) == 1


def test_critical_lines_of_cross():
    cl = critical_lines(cross())
    assert cl.points("v") == (HALF,)
    assert cl.points("h") == (THIRD,)
    assert cl.intervals("v").measure() == 0


def test_unknown_measure_rejected():
    with pytest.raises(ValueError):
        measure_of(cross(), "counting")


@given(figures())
def test_mu_grid_matches_line_enumeration(A):
    assert mu_grid(A) == oracle_mu(A)
    assert mu_lines(A) == oracle_mu(A, ("h",))


@given(figures(sigma_finite=True), figures(sigma_finite=True))
def test_mu_grid_is_additive_on_disjoint_parts(A, B):
    assert mu_grid(A.union(B)) + mu_grid(A.intersect(B)) == mu_grid(A) + mu_grid(B)


@given(figures())
def test_sigma_finite_iff_no_area(A):
    assert sigma_finite(A) == (mu_grid(A) != INF)
    assert sigma_finite(A) == all(not b.has_area for b in A.boxes)


@given(figures(), figures())
def test_monotone(A, B):
    U = A.union(B)
    assert mu_grid(A) <= mu_grid(U)
    assert mu_lines(B) <= mu_lines(U)


@given(figures())
def test_null_sets_have_null_sections(A):
    if mu_grid(A) == 0:
        for k in range(25):
            assert A.section("v", F(k, 24)).measure() == 0
            assert A.section("h", F(k, 24)).measure() == 0

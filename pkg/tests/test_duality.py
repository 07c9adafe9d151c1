import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from germdual.duality import (
    LineFormFunctional,
    functional_from_germ,
    germ_from_line_form,
    norm_witness,
    pair,
)
from germdual.errors import NotIntegrable, Unbounded, ZeroGerm
from germdual.functions import SimpleFunc, l1_norm
from germdual.geometry import Figure2D
from germdual.germs import Germ, LineRule, add_germ, germ_norm, scale_germ
from germdual.laws import ae_variant, duality_bound
from germdual.measure import sigma_finite
from germdual.random_instances import rand_coeff, random_germ, random_simple_func
from germdual.representability import coordinate_germ

F = Fraction
seeds = st.integers(0, 2**32).map(random.Random)
EPSILONS = [F(1, 2), F(1, 10), F(1, 100), F(1, 10**6)]


def test_pairing_needs_sigma_finite_support():
    with pytest.raises(NotIntegrable):
        pair(coordinate_germ(), SimpleFunc.indicator(Figure2D.square()))


def test_cancelling_area_terms_are_fine():
    sq = Figure2D.square()
    f = SimpleFunc(((F(1), sq), (F(-1), sq))) + SimpleFunc.indicator(Figure2D.segment("h", F(1, 3)))
    assert pair(coordinate_germ(), f) == F(1, 2)


@given(seeds)
def test_bounded(rng):
    G = random_germ(rng)
    f = random_simple_func(rng)
    assert abs(pair(G, f)) <= germ_norm(G) * l1_norm(f)


@given(seeds)
def test_linear_in_f(rng):
    G = random_germ(rng)
    f, h = random_simple_func(rng), random_simple_func(rng)
    a, b = rand_coeff(rng), rand_coeff(rng)
    assert pair(G, f.scaled(a) + h.scaled(b)) == a * pair(G, f) + b * pair(G, h)


@given(seeds)
def test_linear_in_germ(rng):
    G, H = random_germ(rng), random_germ(rng)
    f = random_simple_func(rng)
    c = rand_coeff(rng)
    assert pair(add_germ(G, H), f) == pair(G, f) + pair(H, f)
    assert pair(scale_germ(c, G), f) == c * pair(G, f)


@given(seeds)
def test_representative_does_not_matter(rng):
    G = random_germ(rng)
    f = random_simple_func(rng)
    assert pair(ae_variant(G, rng), f) == pair(G, f)


@pytest.mark.parametrize("eps", EPSILONS)
def test_norm_witness_for_coordinate_germ(eps):
    G = coordinate_germ()
    f = norm_witness(G, eps)
    assert l1_norm(f) == 1
    assert abs(pair(G, f)) >= 1 - eps


@given(seeds, st.sampled_from(EPSILONS), st.sampled_from(["grid", "lines"]))
def test_norm_witness_for_random_germs(rng, eps, measure):
    G = random_germ(rng)
    if germ_norm(G, measure) == 0:
        with pytest.raises(ZeroGerm):
            norm_witness(G, eps, measure)
        return
    f = norm_witness(G, eps, measure)
    assert all(sigma_finite(fig) for fig in f.figures())
    assert l1_norm(f, measure) == 1
    assert abs(pair(G, f, measure)) >= germ_norm(G, measure) - eps


def test_norm_witness_rejects_bad_eps():
    with pytest.raises(ValueError):
        norm_witness(coordinate_germ(), 0)


def test_witness_for_tiny_eps_is_short_segment():
    f = norm_witness(coordinate_germ(), F(1, 10))
    assert pair(coordinate_germ(), f) == F(19, 20)


@given(seeds, st.sampled_from(["grid", "lines"]))
def test_line_form_agrees_with_pairing(rng, measure):
    G = random_germ(rng)
    T = functional_from_germ(G, measure)
    f = random_simple_func(rng)
    assert T(f) == pair(G, f, measure)
    G2 = germ_from_line_form(T)
    assert pair(G2, f, measure) == pair(G, f, measure)


def test_line_form_lines_measure_drops_vertical_weights():
    T = LineFormFunctional(Germ(LineRule.constant(7), LineRule.along()), "lines")
    G = germ_from_line_form(T)
    assert germ_norm(G) == 1


def test_non_rational_weights_rejected():
    with pytest.raises(TypeError):
        Germ(LineRule((), ((float("inf"), F(0), F(0), F(0)),)), LineRule.zero())
    smuggled = Germ(LineRule.zero(), LineRule.zero())
    object.__setattr__(smuggled.vertical, "pieces", ((float("inf"), F(0), F(0), F(0)),))
    with pytest.raises(Unbounded):
        functional_from_germ(smuggled)


def test_library_bound_driver():
    assert duality_bound(seed=2, cases=100).passed

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from germdual.functions import CandidateGlobal, LineFunc
from germdual.geometry import Figure2D
from germdual.germs import Germ, LineRule, germ_norm, restrict
from germdual.laws import ae_variant
from germdual.measure import critical_lines, sigma_finite
from germdual.random_instances import COEFF_POOL, random_candidate, random_figure, random_linefunc
from germdual.representability import (
    coefficient_battery,
    coordinate_germ,
    describe,
    exhaustive_nonrepresentability,
    represents,
    standard_battery,
    verify_witness,
)

F = Fraction
HALF = F(1, 2)
seeds = st.integers(0, 2**32).map(random.Random)


def germ_of_affine(a, b, c, overrides=()):
    """The germ that ``a + b*x + c*y`` (with whole-line overrides) induces on every line."""
    vertical = LineRule((), ((F(a), F(b), F(c), F(0)),))
    horizontal = LineRule((), ((F(a), F(c), F(b), F(0)),))
    ex = {"v": {}, "h": {}}
    for (o, s), fn in overrides:
        ex[o][s] = fn
    return Germ(vertical, horizontal, ex["v"], ex["h"])


def test_coordinate_germ_shape():
    G = coordinate_germ()
    assert germ_norm(G) == 1
    assert G.line("v", HALF).ae_equal(LineFunc.identity())
    assert restrict(G, Figure2D.segment("v", HALF)).line("v", HALF).ae_equal(LineFunc.identity())


def test_g_equals_y_fails_on_a_horizontal_line():
    w = represents(CandidateGlobal.uniform(0, 0, 1), coordinate_germ()).witness
    assert w.orientation == "h" and w.line == HALF
    assert w.A == Figure2D.segment("h", HALF, w.interval.lo, w.interval.hi)
    assert w.lhs.ae_equal(LineFunc.constant(HALF))
    assert w.rhs.ae_equal(LineFunc.identity())


def test_g_equals_zero_fails_on_a_vertical_line():
    w = represents(CandidateGlobal.uniform(0, 0, 0), coordinate_germ()).witness
    assert (w.orientation, w.line) == ("v", HALF)
    assert w.lhs.ae_equal(LineFunc.zero()) and w.rhs.ae_equal(LineFunc.identity())


def test_g_equals_x_fails_on_a_vertical_line():
    w = represents(CandidateGlobal.uniform(0, 1, 0), coordinate_germ()).witness
    assert w.orientation == "v"
    assert w.lhs.ae_equal(LineFunc.constant(w.line))


def test_zero_represents_zero():
    battery = coefficient_battery()
    report = exhaustive_nonrepresentability(Germ.zero(), battery)
    assert [describe(g) for g in report.representing] == ["g(x,y) = 0"]


def test_vertical_only_germ_is_not_represented_by_y():
    G = Germ(LineRule.along(), LineRule.zero())
    w = represents(CandidateGlobal.uniform(0, 0, 1), G).witness
    assert w.orientation == "h" and w.line != 0


def test_every_standard_candidate_gets_a_verified_witness():
    G = coordinate_germ()
    battery = standard_battery(seed=3, n_random=40)
    report = exhaustive_nonrepresentability(G, battery)
    assert report.all_refuted
    for g, v in report.entries:
        assert verify_witness(g, G, v.witness)


@given(seeds)
def test_affine_functions_represent_their_own_germ(rng):
    a, b, c = (rng.choice(COEFF_POOL) for _ in range(3))
    overrides = [(("v", F(rng.randint(0, 6), 6)), random_linefunc(rng))]
    g = CandidateGlobal.uniform(a, b, c, overrides)
    G = germ_of_affine(a, b, c, overrides)
    assert represents(g, G).represents
    assert represents(g, ae_variant(G, rng)).represents


@settings(deadline=None)
@given(seeds)
def test_witnesses_are_sound(rng):
    G = Germ(LineRule.along(), LineRule.across()) if rng.random() < 0.5 else coordinate_germ()
    g = random_candidate(rng)
    v = represents(g, G)
    if not v.represents:
        w = v.witness
        assert sigma_finite(w.A) and w.interval.length > 0
        assert verify_witness(g, G, w)


@settings(deadline=None)
@given(seeds)
def test_representing_verdicts_hold_on_random_sets(rng):
    a, b, c = (rng.choice(COEFF_POOL) for _ in range(3))
    g = CandidateGlobal.uniform(a, b, c, [(("h", F(1, 3)), random_linefunc(rng))])
    G = germ_of_affine(a, b, c, g.overrides)
    assert represents(g, G).represents
    for _ in range(100):
        A = random_figure(rng, sigma_finite=True)
        R = restrict(G, A)
        cl = critical_lines(A)
        for o in "vh":
            for s in cl.points(o):
                over = A.section(o, s)
                assert g.trace(o, s).ae_equal(R.line(o, s), over)

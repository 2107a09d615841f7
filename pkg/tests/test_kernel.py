from fractions import Fraction

import pytest
from flint import fmpq_mpoly_ctx
from hypothesis import given

from conftest import genus_one_models, random_genus_one_models, weighted_models
from quadwalk.algebra import RatFun, quartic_discriminant, quartic_invariants
from quadwalk.kernel import (
    CurveClass,
    base_points,
    build_kernel,
    classify_curve,
    discriminant_quartic,
    special_points,
)
from quadwalk.model import WeightedModel, named_model, unweighted_step_sets
from quadwalk.points import CurvePoint, ProjCoord, on_curve

T = RatFun.t()


@given(weighted_models())
def test_expansion_matches_weights(m):
    k = build_kernel(m)
    expected = {}
    for (i, j), w in m.weights:
        expected[(i + 1, j + 1)] = expected.get((i + 1, j + 1), RatFun(0)) - T * w
    expected[(1, 1)] = expected.get((1, 1), RatFun(0)) + 1
    expected = {key: v for key, v in expected.items() if not v.is_zero()}
    assert k.expanded() == expected
    assert k.expanded_via_y() == expected
    assert k.expanded_via_x() == expected


def test_simple_walk_discriminant():
    # independent build in Q[x, t]: (x - t x^2 - t)^2 - 4 t^2 x^2
    ctx = fmpq_mpoly_ctx.get(("x", "t"), "lex")
    x, t = ctx.gens()
    want = (x - t * x**2 - t) ** 2 - 4 * t**2 * x**2
    q = discriminant_quartic(build_kernel(named_model("simple")), "x")
    got = ctx.from_dict({})
    for deg, c in zip((4, 3, 2, 1, 0), q.coeffs_high_to_low()):
        assert c.den.degree() == 0
        for e in range(c.num.degree() + 1):
            got += ctx.from_dict({(deg, e): c.num[e] / c.den[0]})
    assert got == want


@pytest.mark.parametrize(
    "steps",
    [
        [(0, 1), (0, -1)],            # x divides K
        [(1, 0), (-1, 0)],            # y divides K
        [(1, 1), (-1, -1)],           # splits into two (1,1) factors
        [(1, 0), (-1, 0), (0, 1)],    # no step with j = -1: y divides K
    ],
)
def test_degenerate(steps):
    k = build_kernel(WeightedModel.unweighted(steps))
    assert classify_curve(k).tag is CurveClass.DEGENERATE


def test_genus_zero_list():
    for ss in unweighted_step_sets()["genus_zero"]:
        k = build_kernel(WeightedModel.unweighted(ss))
        assert classify_curve(k).tag is CurveClass.GENUS_ZERO, ss


@pytest.mark.parametrize("name", ["simple", "wIIC.2", "IB.6", "GB", "IIB.1", "IIC.5"])
def test_fixtures_are_genus_one(name):
    assert classify_curve(build_kernel(named_model(name))).tag is CurveClass.GENUS_ONE


@given(genus_one_models())
def test_genus_one_discriminants_nonzero(m):
    k = build_kernel(m)
    for axis in ("x", "y"):
        assert not quartic_discriminant(discriminant_quartic(k, axis)).is_zero()


@given(weighted_models())
def test_class_invariant_under_transpose(m):
    k = build_kernel(m)
    assert classify_curve(k).tag == classify_curve(k.transpose()).tag


def test_special_points_on_curve():
    for m in random_genus_one_models(30, seed=7):
        k = build_kernel(m)
        sp = special_points(k)
        for p in sp.P + sp.Q + (sp.iota1_Q0, sp.iota1_Q1):
            assert on_curve(k, p)


def test_wiic2_special_points(wiic2):
    sp = special_points(wiic2)
    inf, zero = ProjCoord.infinity(), ProjCoord.affine(RatFun(0))
    assert sp.P0 == sp.P1 == CurvePoint(inf, zero)
    assert set(sp.Q) == {CurvePoint(ProjCoord.affine(RatFun(-1)), inf), CurvePoint(zero, inf)}


def test_wiic2_base_point_corners(wiic2):
    bp = base_points(wiic2)
    assert bp.corner_multiplicity == {"(0,0)": 0, "(0,inf)": 2, "(inf,0)": 3, "(inf,inf)": 0}


@pytest.mark.parametrize("w", [(2, 3, 1, 1), (2, 3, 6, 1), (1, 1, 1, 1), (5, 2, 3, 7)])
def test_gb_discriminant_shape(w):
    d10, dm10, dm11, d1m1 = map(Fraction, w)
    m = WeightedModel({(1, 0): d10, (-1, 0): dm10, (-1, 1): dm11, (1, -1): d1m1})
    I, J = quartic_invariants(discriminant_quartic(build_kernel(m), "x"))
    delta = 4 * I**3 - J * J
    p, q = d10 * dm10, d1m1 * dm11
    shape = T**8 * (16 * T**4 * (p - q) ** 2 - 8 * T**2 * (p + q) + 1)
    ratio = delta / shape
    assert ratio.is_constant() and ratio.constant_value() != 0

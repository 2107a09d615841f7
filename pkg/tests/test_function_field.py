import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import genus_one_models
from quadwalk.algebra import RatFun, XTFrac, xt_poly_in_x
from quadwalk.expr import ExprError, parse_function
from quadwalk.families import sample_wiic2
from quadwalk.function_field import (
    CertificateMembershipError,
    build_b,
    certificate_to_pair,
    ff_apply_iota1,
    ff_apply_iota2,
    ff_apply_tau,
    function_field,
    tau_order,
    verify_certificate,
    verify_decoupling,
)
from quadwalk.kernel import build_kernel, discriminant_quartic, special_points
from quadwalk.model import WeightedModel, named_model
from quadwalk.points import tau_point, tau_power_point


def _some_functions(ff):
    x, y, t = ff.x(), ff.y(), ff.t()
    return [x, y, x * y + t, (y + 1) / (x - 2), y * y, x / (t * y + x)]


def test_involutions_on_functions(genus_one_sample):
    for m in genus_one_sample:
        k = build_kernel(m)
        ff = function_field(k)
        for f in _some_functions(ff)[:3]:
            assert ff_apply_iota1(k, ff_apply_iota1(k, f)) == f
            assert ff_apply_iota2(k, ff_apply_iota2(k, f)) == f


def test_b_is_odd_under_iota1(genus_one_sample):
    for m in genus_one_sample:
        k = build_kernel(m)
        b = build_b(k)
        assert ff_apply_iota1(k, b) == -b


def test_b_squared_identity(genus_one_sample):
    # x^2 (B^2 - 4AC) / A^2, with A rebuilt from the NW/N/NE weights
    for m in genus_one_sample:
        k = build_kernel(m)
        ff = function_field(k)
        q = discriminant_quartic(k, "x")
        disc = xt_poly_in_x([q.a0, q.a1, q.a2, q.a3, q.a4])
        t = RatFun.t()
        lead = xt_poly_in_x([t * m.d(i - 1, 1) for i in range(3)])
        x = XTFrac.x()
        b = build_b(k)
        assert b * b == ff.element(x * x * disc / (lead * lead))


@given(genus_one_models())
def test_multiplicative_inverse(m):
    ff = function_field(build_kernel(m))
    for f in _some_functions(ff):
        assert f * f.inverse() == ff.const(1)


@given(genus_one_models())
def test_iota2_fixes_functions_of_y(m):
    k = build_kernel(m)
    ff = function_field(k)
    g = (ff.y() * ff.y() + ff.t()) / (ff.y() - 3)
    assert ff_apply_iota2(k, g) == g
    assert ff_apply_iota1(k, ff.x()) == ff.x()


def _finite_affine(p):
    return not p.x.is_infinite and not p.y.is_infinite


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_tau_on_functions_matches_tau_on_points(seed):
    rng = random.Random(seed)
    m = sample_wiic2(rng, on=False)
    k = build_kernel(m)
    ff = function_field(k)
    P = special_points(k).P0
    pts = [tau_power_point(k, P, n) for n in (2, 3, -2)]
    pts = [p for p in pts if _finite_affine(p)]
    assert pts
    for p in pts:
        q = tau_point(k, p)
        if not _finite_affine(q):
            continue
        for t0 in (Fraction(1, 7), Fraction(2, 11), Fraction(-3, 13), Fraction(5, 17), Fraction(1, 19)):
            x0, y0 = p.x.value(t0), p.y.value(t0)
            for f, coord in ((ff.x(), q.x), (ff.y(), q.y)):
                assert ff_apply_tau(k, f).evaluate(x0, y0, t0) == coord.value(t0)


@pytest.mark.parametrize("name,order", [("simple", 2), ("GB", 4)])
def test_finite_orders(name, order):
    assert tau_order(build_kernel(named_model(name))) == order


def test_gb_weighted_on_condition_order_four():
    m = WeightedModel({(-1, 0): 2, (1, 0): 3, (-1, 1): 6, (1, -1): 1})
    assert tau_order(build_kernel(m)) in (2, 4)


@pytest.mark.parametrize("name", ["wIIC.2", "IB.6", "IIB.1"])
def test_infinite_orders(name):
    assert tau_order(build_kernel(named_model(name))) is None


def _scaled_inverse_y(ff, num, den):
    return -ff.const(num) / (ff.const(den) * ff.y())


def test_wiic2_certificate_on_condition():
    # residue matching at Q0 gives the scalar -d(-1,-1)/d(0,1)
    rng = random.Random(5)
    for _ in range(5):
        m = sample_wiic2(rng, on=True)
        k = build_kernel(m)
        ff = function_field(k)
        g = _scaled_inverse_y(ff, m.d(-1, -1), m.d(0, 1))
        assert verify_certificate(k, g)
        f, g2 = certificate_to_pair(k, g)
        assert verify_decoupling(k, f, g2)


def test_reciprocal_scalar_only_works_when_weights_coincide():
    rng = random.Random(5)
    for _ in range(8):
        m = sample_wiic2(rng, on=True)
        k = build_kernel(m)
        g = _scaled_inverse_y(function_field(k), m.d(0, 1), m.d(-1, -1))
        assert verify_certificate(k, g) == (m.d(0, 1) == m.d(-1, -1))


def test_wiic2_certificate_fails_off_condition():
    m = sample_wiic2(random.Random(6), on=False)
    k = build_kernel(m)
    ff = function_field(k)
    assert not verify_certificate(k, _scaled_inverse_y(ff, m.d(-1, -1), m.d(0, 1)))


def test_wiic2_unweighted_pair_values(wiic2):
    ff = function_field(wiic2)
    g = parse_function("-1/y", ff)
    f, _ = certificate_to_pair(wiic2, g)
    assert f.in_x_field()
    # y * iota1(y) = C/A = 1/x for the all-ones model
    y = ff.y()
    assert y * ff_apply_iota1(wiic2, y) == ff.x().inverse()


def test_pair_conversion_rejects_non_certificate(wiic2):
    ff = function_field(wiic2)
    with pytest.raises(CertificateMembershipError):
        certificate_to_pair(wiic2, ff.x())


def test_expression_parser(wiic2):
    ff = function_field(wiic2)
    f = parse_function("(x^2 - 3/2*t) / (y + 1) - 2", ff)
    x, y, t = ff.x(), ff.y(), ff.t()
    assert f == (x * x - ff.const(Fraction(3, 2)) * t) / (y + 1) - 2
    assert parse_function("y^-1", ff) == y.inverse()
    for bad in ("z + 1", "x ** y", "1 / (x - x)", "x +", "x % 2"):
        with pytest.raises(ExprError):
            parse_function(bad, ff)


@given(st.integers(-3, 3))
def test_tau_power_laws(n):
    k = build_kernel(named_model("wIIC.2"))
    ff = function_field(k)
    f = ff.x() + ff.y()
    g = f
    for _ in range(abs(n)):
        g = ff_apply_tau(k, g) if n > 0 else ff_apply_iota2(k, ff_apply_iota1(k, g))
    back = g
    for _ in range(abs(n)):
        back = ff_apply_iota2(k, ff_apply_iota1(k, back)) if n > 0 else ff_apply_tau(k, back)
    assert back == f

from fractions import Fraction

import pytest
from flint import fmpq_poly
from hypothesis import given
from hypothesis import strategies as st

from quadwalk.algebra import (
    BinaryQuartic,
    QuadExt,
    RatFun,
    poly_gcd,
    poly_t,
    poly_valuation_at_zero,
    quartic_discriminant,
    quartic_invariants,
    rational_sqrt,
    squarefree_part,
    valuation_at_zero,
)

small_q = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
polys = st.lists(small_q, min_size=0, max_size=5).map(poly_t)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfuns = st.builds(RatFun, polys, nonzero_polys)
nonzero_ratfuns = ratfuns.filter(lambda f: not f.is_zero())

T = RatFun.t()


def test_canonical_form_is_structural():
    f = RatFun(fmpq_poly([0, 2, 2]), fmpq_poly([0, 4]))  # (2t + 2t^2) / 4t
    assert f.den == fmpq_poly([1])
    assert f == (1 + T) / 2
    assert hash(f) == hash((1 + T) / 2)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RatFun(1, 0)


@given(ratfuns, ratfuns, ratfuns)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == RatFun(0)


@given(nonzero_ratfuns)
def test_inverse(a):
    assert a * a.inverse() == RatFun(1)
    assert a / a == RatFun(1)


@given(polys, polys)
def test_gcd_divides_and_is_monic(p, q):
    g = poly_gcd(p, q)
    if p.is_zero() and q.is_zero():
        assert g.is_zero()
        return
    assert g.leading_coefficient() == 1
    assert (p % g).is_zero() and (q % g).is_zero()


def test_gcd_examples():
    t = fmpq_poly([0, 1])
    assert poly_gcd(2 * t * t - 2, 3 * t - 3) == t - 1
    assert poly_gcd(t * t + 1, t) == fmpq_poly([1])
    assert squarefree_part((t - 1) ** 3 * (t + 2)) == (t - 1) * (t + 2)


@given(nonzero_ratfuns, nonzero_ratfuns)
def test_valuation_additive(f, g):
    assert valuation_at_zero(f * g) == valuation_at_zero(f) + valuation_at_zero(g)


def test_valuation_examples():
    assert valuation_at_zero(T**3 / (1 + T)) == 3
    assert valuation_at_zero((1 + T) / T**2) == -2
    assert poly_valuation_at_zero(fmpq_poly([0, 0, 5, 1])) == 2


@pytest.mark.parametrize("q,expected", [(Fraction(9, 4), Fraction(3, 2)), (Fraction(2), None), (Fraction(0), 0)])
def test_rational_sqrt(q, expected):
    assert rational_sqrt(q) == expected


def _poly_from_roots(roots, lead):
    x = fmpq_poly([0, 1])
    p = poly_t([lead])
    for r in roots:
        p *= x - poly_t([r])
    return p


@given(st.lists(small_q, min_size=4, max_size=4), small_q.filter(bool), st.booleans())
def test_discriminant_vanishes_iff_repeated_root(roots, lead, plant):
    if plant:
        roots = roots[:3] + [roots[0]]
    p = _poly_from_roots(roots, lead)
    q = BinaryQuartic.from_affine([p[i] for i in range(5)])
    repeated = poly_gcd(p, p.derivative()).degree() > 0
    assert quartic_discriminant(q).is_zero() == repeated


def test_discriminant_sees_root_at_infinity():
    # degree-3 affine part with a double root at infinity once a3 also vanishes
    cubic = BinaryQuartic.from_affine([1, 0, -1, 1, 0])
    assert not quartic_discriminant(cubic).is_zero()
    double_inf = BinaryQuartic.from_affine([1, 0, -1, 0, 0])
    assert quartic_discriminant(double_inf).is_zero()


def test_invariants_of_x4_minus_1():
    I, J = quartic_invariants(BinaryQuartic.from_affine([-1, 0, 0, 0, 1]))
    assert I == RatFun(-12) and J == RatFun(0)


def test_quadext_arithmetic():
    s = QuadExt(0, 1, -1)
    assert s * s == RatFun(-1)
    z = QuadExt(1 + T, 2, 5)
    assert z * z.inverse() == RatFun(1)
    assert (z - z) == RatFun(0)
    with pytest.raises(ValueError):
        z + QuadExt(0, 1, 3)

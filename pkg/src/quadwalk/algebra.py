"""Exact arithmetic substrate.

Everything downstream is an exact equality test, so every value here is kept in
a canonical form: rationals are ``fractions.Fraction``, polynomials in ``t`` are
flint ``fmpq_poly`` objects and rational functions in ``t`` are gcd-reduced with
a monic denominator.

Three further layers sit on top:

* :class:`QuadExt` for elements ``a + b*sqrt(D)`` with ``a, b`` in Q(t) and a
  fixed non-square rational ``D``. Needed when an edge quadratic of the kernel
  curve has irrational roots.
* :class:`BinaryQuartic` plus :func:`quartic_invariants` for the classical
  invariants of a binary quartic form.
* :class:`XTFrac`, fractions of polynomials in ``(x, t)``. These are the
  coefficients of functions on the kernel curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from flint import fmpq, fmpq_mpoly, fmpq_mpoly_ctx, fmpq_poly

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "PolyT",
    "RatFun",
    "QuadExt",
    "BinaryQuartic",
    "XTFrac",
    "XT_CTX",
    "to_fraction",
    "to_fmpq",
    "poly_t",
    "poly_gcd",
    "squarefree_part",
    "squarefree_layers",
    "poly_valuation_at_zero",
    "valuation_at_zero",
    "quartic_invariants",
    "quartic_discriminant",
    "is_rational_square",
    "rational_sqrt",
]

PolyT = fmpq_poly


def to_fraction(c) -> Fraction:
    """Convert an int, Fraction, fmpq or numeric string to a Fraction."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, fmpq):
        return Fraction(int(c.p), int(c.q))
    if isinstance(c, str):
        return Fraction(c.strip())
    raise TypeError(f"cannot interpret {c!r} as an exact rational")


def to_fmpq(c) -> fmpq:
    c = to_fraction(c)
    return fmpq(c.numerator, c.denominator)


def poly_t(coeffs: Iterable) -> fmpq_poly:
    """Polynomial in t from a low-to-high coefficient list."""
    return fmpq_poly([to_fmpq(c) for c in coeffs])


def _monic(p: fmpq_poly) -> fmpq_poly:
    if p.is_zero():
        return p
    return p / p.leading_coefficient()


def poly_gcd(p: fmpq_poly, q: fmpq_poly) -> fmpq_poly:
    """Monic gcd; gcd(0, 0) = 0."""
    if p.is_zero() and q.is_zero():
        return fmpq_poly([])
    return _monic(p.gcd(q))


def squarefree_part(p: fmpq_poly) -> fmpq_poly:
    """Monic p / gcd(p, p')."""
    if p.is_zero():
        raise ValueError("squarefree_part of the zero polynomial")
    if p.degree() == 0:
        return fmpq_poly([1])
    g = p.gcd(p.derivative())
    return _monic(p // g)


def squarefree_layers(p: fmpq_poly) -> dict[int, fmpq_poly]:
    """Yun decomposition: multiplicity -> monic squarefree factor of positive degree."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    out: dict[int, fmpq_poly] = {}
    _, factors = p.factor_squarefree()
    for f, e in factors:
        f = _monic(f)
        if f.degree() > 0:
            out[int(e)] = out[int(e)] * f if int(e) in out else f
    return out


def poly_valuation_at_zero(p: fmpq_poly) -> int:
    if p.is_zero():
        raise ValueError("valuation of zero is +infinity")
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    raise AssertionError("unreachable")


def is_rational_square(q: Fraction) -> bool:
    return rational_sqrt(q) is not None


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    from math import isqrt

    q = to_fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class RatFun:
    """Element of Q(t) in canonical form: gcd(num, den) = 1, den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([to_fmpq(num)])
        if den is None:
            den = fmpq_poly([1])
            _canonical = True
        elif not isinstance(den, fmpq_poly):
            den = fmpq_poly([to_fmpq(den)])
        if not _canonical:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                den = fmpq_poly([1])
            else:
                g = num.gcd(den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    # constructors
    @classmethod
    def t(cls) -> "RatFun":
        return cls(fmpq_poly([0, 1]))

    @classmethod
    def coerce(cls, other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, fmpq_poly):
            return cls(other)
        return cls(to_fmpq(other))

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return to_fraction(self.num[0]) if not self.num.is_zero() else Fraction(0)

    # arithmetic
    def __add__(self, other):
        if isinstance(other, QuadExt):
            return NotImplemented
        o = RatFun.coerce(other)
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        if isinstance(other, QuadExt):
            return NotImplemented
        return self + (-RatFun.coerce(other))

    def __rsub__(self, other):
        return RatFun.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, QuadExt):
            return NotImplemented
        o = RatFun.coerce(other)
        if self.is_zero() or o.is_zero():
            return RatFun(0)
        # cross-cancel before multiplying to keep sizes down
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n1, d2 = self.num // g1, o.den // g1
        n2, d1 = o.num // g2, self.den // g2
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFun(num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(t)")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            return NotImplemented
        return self * RatFun.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFun.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun(self.num**n, self.den**n, _canonical=True)

    # comparison
    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return other == self
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(map(str, self.num.coeffs())), tuple(map(str, self.den.coeffs()))))
        return self._hash

    # evaluation and inspection
    def __call__(self, t0):
        v = to_fmpq(t0)
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError(f"pole at t = {t0}")
        return to_fraction(self.num(v) / d)

    def valuation_at_zero(self) -> int:
        return valuation_at_zero(self)

    def degree(self) -> int:
        """Max of numerator and denominator degree (height in t)."""
        return max(self.num.degree(), self.den.degree())

    def __repr__(self):
        if self.den.degree() == 0:
            return f"RatFun({self.num})"
        return f"RatFun(({self.num})/({self.den}))"

    def __str__(self):
        if self.den.degree() == 0:
            return str(self.num).replace("x", "t")
        return f"({str(self.num).replace('x', 't')})/({str(self.den).replace('x', 't')})"


def valuation_at_zero(f) -> int:
    """ord_{t=0}(num) - ord_{t=0}(den)."""
    f = RatFun.coerce(f)
    if f.is_zero():
        raise ValueError("valuation of zero is +infinity")
    return poly_valuation_at_zero(f.num) - poly_valuation_at_zero(f.den)


class QuadExt:
    """Element a + b*sqrt(D) of Q(t)(sqrt(D)) with D a non-square rational.

    Arithmetic between elements with different D is refused: the points that
    would need it can never be equal, and callers check that up front.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D):
        self.a = RatFun.coerce(a)
        self.b = RatFun.coerce(b)
        self.D = to_fraction(D)

    def _lift(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.D != self.D:
                raise ValueError(f"mixing sqrt({self.D}) and sqrt({other.D})")
            return other
        return QuadExt(RatFun.coerce(other), RatFun(0), self.D)

    def _out(self, a: RatFun, b: RatFun):
        return a if b.is_zero() else QuadExt(a, b, self.D)

    def __add__(self, other):
        o = self._lift(other)
        return self._out(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return self._out(
            self.a * o.a + self.b * o.b * self.D, self.a * o.b + self.b * o.a
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.D)

    def norm(self) -> RatFun:
        return self.a * self.a - self.b * self.b * self.D

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def inverse(self):
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero in quadratic extension")
        return self._out(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._lift(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if other.D != self.D:
                return self.b.is_zero() and other.b.is_zero() and self.a == other.a
            return self.a == other.a and self.b == other.b
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self.b.is_zero() and self.a == o

    def __hash__(self):
        if self.b.is_zero():
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __call__(self, t0) -> float:
        """Numeric value at t = t0 (real embedding with positive sqrt)."""
        import math

        return float(self.a(t0)) + float(self.b(t0)) * math.sqrt(float(self.D))

    def __repr__(self):
        return f"QuadExt({self.a!s} + ({self.b!s})*sqrt({self.D}))"

    __str__ = __repr__


@dataclass(frozen=True)
class BinaryQuartic:
    """a4 x0^4 + a3 x0^3 x1 + a2 x0^2 x1^2 + a1 x0 x1^3 + a0 x1^4."""

    a4: RatFun
    a3: RatFun
    a2: RatFun
    a1: RatFun
    a0: RatFun

    def __post_init__(self):
        for name in ("a4", "a3", "a2", "a1", "a0"):
            object.__setattr__(self, name, RatFun.coerce(getattr(self, name)))

    @classmethod
    def from_affine(cls, coeffs: Sequence) -> "BinaryQuartic":
        """From low-to-high coefficients (c0..c4) of the dehomogenized x0/x1 polynomial."""
        c = [RatFun.coerce(v) for v in coeffs] + [RatFun(0)] * (5 - len(coeffs))
        return cls(c[4], c[3], c[2], c[1], c[0])

    def coeffs_high_to_low(self) -> tuple[RatFun, ...]:
        return (self.a4, self.a3, self.a2, self.a1, self.a0)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs_high_to_low())

    def affine_degree(self) -> int:
        """Degree in x0 of the dehomogenization at x1 = 1; -1 for the zero form."""
        for d, c in zip((4, 3, 2, 1, 0), self.coeffs_high_to_low()):
            if not c.is_zero():
                return d
        return -1


def quartic_invariants(q: BinaryQuartic) -> tuple[RatFun, RatFun]:
    """Classical invariants (I, J) of a binary quartic."""
    a4, a3, a2, a1, a0 = q.coeffs_high_to_low()
    I = 12 * a4 * a0 - 3 * a3 * a1 + a2 * a2
    J = (
        72 * a4 * a2 * a0
        + 9 * a3 * a2 * a1
        - 27 * a4 * a1 * a1
        - 27 * a3 * a3 * a0
        - 2 * a2 * a2 * a2
    )
    return I, J


def quartic_discriminant(q: BinaryQuartic) -> RatFun:
    I, J = quartic_invariants(q)
    return 4 * I**3 - J * J


# ---------------------------------------------------------------------------
# Fractions of polynomials in (x, t)

XT_CTX = fmpq_mpoly_ctx.get(("x", "t"), "lex")
_X, _T = XT_CTX.gens()


def xt_from_ratfun(f: RatFun) -> "XTFrac":
    return XTFrac(_poly_t_to_xt(f.num), _poly_t_to_xt(f.den))


def _poly_t_to_xt(p: fmpq_poly) -> fmpq_mpoly:
    return XT_CTX.from_dict({(0, i): c for i, c in enumerate(p.coeffs()) if c != 0})


def xt_poly_in_x(coeffs: Sequence[RatFun]) -> "XTFrac":
    """sum_i coeffs[i] * x^i as an XTFrac."""
    out = XTFrac(XT_CTX.from_dict({}))
    xp = XTFrac(XT_CTX.from_dict({(0, 0): 1}))
    x = XTFrac(_X)
    for c in coeffs:
        c = RatFun.coerce(c)
        if not c.is_zero():
            out = out + xt_from_ratfun(c) * xp
        xp = xp * x
    return out


class XTFrac:
    """Element of Q(t)(x) as num/den with num, den in Q[x, t].

    Canonical: gcd(num, den) = 1 and den has leading coefficient 1 in lex
    order (x > t).
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: fmpq_mpoly, den: fmpq_mpoly | None = None, *, _canonical=False):
        if den is None:
            den = XT_CTX.from_dict({(0, 0): 1})
            _canonical = True
        if not _canonical:
            if den.is_zero():
                raise ZeroDivisionError("XTFrac with zero denominator")
            if num.is_zero():
                den = XT_CTX.from_dict({(0, 0): 1})
            else:
                g = num.gcd(den)
                if not g.is_constant():
                    num = num / g
                    den = den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def x(cls) -> "XTFrac":
        return cls(_X)

    @classmethod
    def coerce(cls, other) -> "XTFrac":
        if isinstance(other, XTFrac):
            return other
        if isinstance(other, RatFun):
            return xt_from_ratfun(other)
        if isinstance(other, fmpq_mpoly):
            return cls(other)
        return cls(XT_CTX.from_dict({(0, 0): to_fmpq(other)}))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = XTFrac.coerce(other)
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return XTFrac(self.num + o.num, self.den)
        g = self.den.gcd(o.den)
        if g.is_constant():
            return XTFrac(self.num * o.den + o.num * self.den, self.den * o.den)
        d1 = self.den / g
        d2 = o.den / g
        return XTFrac(self.num * d2 + o.num * d1, d1 * o.den)

    __radd__ = __add__

    def __neg__(self):
        return XTFrac(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-XTFrac.coerce(other))

    def __rsub__(self, other):
        return XTFrac.coerce(other) - self

    def __mul__(self, other):
        o = XTFrac.coerce(other)
        if self.is_zero() or o.is_zero():
            return XTFrac(XT_CTX.from_dict({}))
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n1 = self.num / g1 if not g1.is_constant() else self.num
        d2 = o.den / g1 if not g1.is_constant() else o.den
        n2 = o.num / g2 if not g2.is_constant() else o.num
        d1 = self.den / g2 if not g2.is_constant() else self.den
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return XTFrac(num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "XTFrac":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(t)(x)")
        return XTFrac(self.den, self.num)

    def __truediv__(self, other):
        return self * XTFrac.coerce(other).inverse()

    def __rtruediv__(self, other):
        return XTFrac.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return XTFrac(self.num**n, self.den**n, _canonical=True)

    def __eq__(self, other):
        try:
            o = XTFrac.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def x_degree(self) -> int:
        return max(self.num.degrees()[0], self.den.degrees()[0])

    def t_degree(self) -> int:
        return max(self.num.degrees()[1], self.den.degrees()[1])

    def x_coefficients(self, which: str = "num") -> list[RatFun]:
        """Coefficients in Q[t] of num (or den) as a polynomial in x, low to high."""
        p = self.num if which == "num" else self.den
        deg = p.degrees()[0]
        buckets: list[dict[int, fmpq]] = [dict() for _ in range(max(deg, 0) + 1)]
        for (ex, et), c in p.to_dict().items():
            buckets[ex][et] = c
        out = []
        for b in buckets:
            if b:
                top = max(b)
                out.append(RatFun(fmpq_poly([b.get(i, 0) for i in range(top + 1)])))
            else:
                out.append(RatFun(0))
        return out

    def eval_x(self, x0, t0=None):
        """Substitute x = x0 (and optionally t = t0); returns RatFun or Fraction."""
        xs = to_fmpq(x0)
        n = self.num.subs({"x": xs})
        d = self.den.subs({"x": xs})
        if t0 is not None:
            ts = to_fmpq(t0)
            nv = n.subs({"t": ts})
            dv = d.subs({"t": ts})
            dc = dv.to_dict().get((0, 0), 0)
            if dc == 0:
                raise ZeroDivisionError("pole")
            return to_fraction(nv.to_dict().get((0, 0), 0)) / to_fraction(dc)
        nt = RatFun(fmpq_poly([n.to_dict().get((0, i), 0) for i in range(n.degrees()[1] + 1)]) if not n.is_zero() else fmpq_poly([]))
        dt = RatFun(fmpq_poly([d.to_dict().get((0, i), 0) for i in range(d.degrees()[1] + 1)]))
        if dt.is_zero():
            raise ZeroDivisionError("pole")
        return nt / dt

    def __repr__(self):
        if self.den.is_one():
            return f"XTFrac({self.num})"
        return f"XTFrac(({self.num})/({self.den}))"

    __str__ = __repr__

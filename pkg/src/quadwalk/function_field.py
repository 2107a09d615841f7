"""Function field of the kernel curve.

Every function is stored as ``u + v*y`` with ``u, v`` in Q(t)(x). This is
canonical because y has degree 2 over Q(t)(x); the relation
``A y^2 + B y + C = 0`` reduces any product back to this shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .algebra import RatFun, XTFrac, to_fraction, xt_from_ratfun, xt_poly_in_x
from .kernel import Kernel


class CertificateMembershipError(ValueError):
    """A claimed certificate produced a pair outside Q(t)(x) x Q(t)(y)."""


class FunctionField:
    """Q(t)(x)[y] / (A y^2 + B y + C) for one kernel."""

    def __init__(self, k: Kernel):
        self.kernel = k
        self.A = xt_poly_in_x(k.A)
        self.B = xt_poly_in_x(k.B)
        self.C = xt_poly_in_x(k.C)
        if self.A.is_zero():
            raise ValueError("kernel has no y^2 term; function field not quadratic in y")
        if all(c.is_zero() for c in k.Ap):
            raise ValueError("kernel has no x^2 term")
        self.B_over_A = self.B / self.A
        self.C_over_A = self.C / self.A
        self._xbar = None

    # basic elements
    def element(self, u, v=0) -> "CurveFunction":
        return CurveFunction(self, XTFrac.coerce(u), XTFrac.coerce(v))

    def x(self) -> "CurveFunction":
        return self.element(XTFrac.x())

    def y(self) -> "CurveFunction":
        return self.element(0, 1)

    def t(self) -> "CurveFunction":
        return self.element(RatFun.t())

    def const(self, c) -> "CurveFunction":
        return self.element(c)

    def poly_in_y(self, coeffs) -> "CurveFunction":
        """sum_j coeffs[j] * y^j with coefficients in Q(t)."""
        out = self.const(0)
        yp = self.const(1)
        y = self.y()
        for c in coeffs:
            c = RatFun.coerce(c)
            if not c.is_zero():
                out = out + yp * xt_from_ratfun(c)
            yp = yp * y
        return out

    def xbar(self) -> "CurveFunction":
        """The image of x under iota2: -x - B'(y)/A'(y)."""
        if self._xbar is None:
            k = self.kernel
            self._xbar = -self.x() - self.poly_in_y(k.Bp) / self.poly_in_y(k.Ap)
        return self._xbar

    def eval_xt(self, r: XTFrac, X: "CurveFunction") -> "CurveFunction":
        """Substitute the function X for x in r in Q(t)(x)."""

        def horner(coeffs):
            acc = self.const(0)
            for c in reversed(coeffs):
                acc = acc * X + xt_from_ratfun(c)
            return acc

        num = horner(r.x_coefficients("num"))
        if r.den.degrees()[0] == 0:
            return num * xt_from_ratfun(RatFun(1) / r.x_coefficients("den")[0])
        return num / horner(r.x_coefficients("den"))


@lru_cache(maxsize=256)
def function_field(k: Kernel) -> FunctionField:
    return FunctionField(k)


@dataclass(frozen=True, eq=False)
class CurveFunction:
    ff: FunctionField
    u: XTFrac
    v: XTFrac

    def _coerce(self, other) -> "CurveFunction":
        if isinstance(other, CurveFunction):
            if other.ff is not self.ff and other.ff.kernel != self.ff.kernel:
                raise ValueError("functions on different curves")
            return other
        return CurveFunction(self.ff, XTFrac.coerce(other), XTFrac.coerce(0))

    def __add__(self, other):
        o = self._coerce(other)
        return CurveFunction(self.ff, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return CurveFunction(self.ff, -self.u, -self.v)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        ff = self.ff
        if self.v.is_zero() and o.v.is_zero():
            return CurveFunction(ff, self.u * o.u, XTFrac.coerce(0))
        if self.v.is_zero():
            return CurveFunction(ff, self.u * o.u, self.u * o.v)
        if o.v.is_zero():
            return CurveFunction(ff, self.u * o.u, self.v * o.u)
        vv = self.v * o.v
        u = self.u * o.u - vv * ff.C_over_A
        v = self.u * o.v + o.u * self.v - vv * ff.B_over_A
        return CurveFunction(ff, u, v)

    __rmul__ = __mul__

    def conjugate(self) -> "CurveFunction":
        """Image under iota1: y -> -y - B/A."""
        return CurveFunction(self.ff, self.u - self.v * self.ff.B_over_A, -self.v)

    def norm(self) -> XTFrac:
        ff = self.ff
        return self.u * self.u - self.u * self.v * ff.B_over_A + self.v * self.v * ff.C_over_A

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def inverse(self) -> "CurveFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero function")
        if self.v.is_zero():
            return CurveFunction(self.ff, self.u.inverse(), self.v)
        n = self.norm()
        c = self.conjugate()
        return CurveFunction(self.ff, c.u / n, c.v / n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self._coerce(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v))

    def in_x_field(self) -> bool:
        """Whether the function lies in Q(t)(x)."""
        return self.v.is_zero()

    def evaluate(self, x0, y0, t0) -> Fraction:
        """Value at a numeric point (rational x0, y0, t0)."""
        u = self.u.eval_x(x0, t0)
        v = self.v.eval_x(x0, t0) if not self.v.is_zero() else Fraction(0)
        return u + v * to_fraction(y0)

    def __repr__(self):
        return f"CurveFunction(u={self.u}, v={self.v})"


def ff_apply_iota1(k: Kernel, f: CurveFunction) -> CurveFunction:
    return f.conjugate()


def ff_apply_iota2(k: Kernel, f: CurveFunction) -> CurveFunction:
    ff = f.ff
    X = ff.xbar()
    u = ff.eval_xt(f.u, X)
    if f.v.is_zero():
        return u
    return u + ff.eval_xt(f.v, X) * ff.y()


def ff_apply_tau(k: Kernel, f: CurveFunction) -> CurveFunction:
    """tau on functions is iota1 after iota2: (tau f)(P) = f(tau P)."""
    return ff_apply_iota1(k, ff_apply_iota2(k, f))


def tau_order(k: Kernel, max_n: int = 6) -> int | None:
    """Smallest n <= max_n with tau^n(x) = x and tau^n(y) = y."""
    ff = function_field(k)
    x, y = ff.x(), ff.y()
    fx, fy = x, y
    for n in range(1, max_n + 1):
        fx, fy = ff_apply_tau(k, fx), ff_apply_tau(k, fy)
        if fx == x and fy == y:
            return n
    return None


def build_b(k: Kernel) -> CurveFunction:
    """b = x * (iota1(y) - y)."""
    ff = function_field(k)
    x = XTFrac.x()
    return ff.element(-x * ff.B_over_A, -2 * x)


def b_squared_expected(k: Kernel) -> CurveFunction:
    """x^2 (B^2 - 4AC) / A^2, an element of Q(t)(x)."""
    ff = function_field(k)
    x = XTFrac.x()
    return ff.element(x * x * (ff.B * ff.B - 4 * ff.A * ff.C) / (ff.A * ff.A))


def verify_certificate(k: Kernel, g: CurveFunction) -> bool:
    return build_b(k) == ff_apply_tau(k, g) - g


def verify_decoupling(k: Kernel, f, g) -> bool:
    """xy = f + g on the curve, with f in Q(t)(x) and g in Q(t)(y)."""
    ff = function_field(k)
    f = f if isinstance(f, CurveFunction) else ff.element(f)
    g = g if isinstance(g, CurveFunction) else ff.element(g)
    if not (ff_apply_iota1(k, f) == f and ff_apply_iota2(k, g) == g):
        return False
    return (ff.x() * ff.y() - f - g).is_zero()


def certificate_to_pair(k: Kernel, g: CurveFunction) -> tuple[CurveFunction, CurveFunction]:
    """Decoupling pair (xy - g, g) from a certificate g."""
    ff = function_field(k)
    f = ff.x() * ff.y() - g
    if ff_apply_iota1(k, f) != f:
        raise CertificateMembershipError("xy - g is not fixed by iota1 (not a function of x alone)")
    if ff_apply_iota2(k, g) != g:
        raise CertificateMembershipError("g is not fixed by iota2 (not a function of y alone)")
    return f, g

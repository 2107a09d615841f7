"""Kernel polynomial, kernel curve classification, special and base points."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from flint import fmpq_poly

from .algebra import (
    XT_CTX,
    BinaryQuartic,
    QuadExt,
    RatFun,
    XTFrac,
    quartic_invariants,
    rational_sqrt,
    to_fmpq,
    xt_poly_in_x,
)
from .model import WeightedModel
from .points import CurvePoint, DegenerateFiberError, ProjCoord, iota1_point, on_curve


@dataclass(frozen=True)
class Kernel:
    """K = xy(1 - t S(x, y)) in three consistent forms.

    ``grid[i][j]`` is the coefficient of x0^i x1^(2-i) y0^j y1^(2-j) in the
    bihomogeneous kernel. ``A, B, C`` are the y^2, y, 1 coefficients as
    polynomials in x (low to high); ``Ap, Bp, Cp`` the mirrored ones in y.
    """

    model: WeightedModel
    grid: tuple[tuple[RatFun, ...], ...]

    @property
    def A(self) -> tuple[RatFun, ...]:
        return tuple(self.grid[i][2] for i in range(3))

    @property
    def B(self) -> tuple[RatFun, ...]:
        return tuple(self.grid[i][1] for i in range(3))

    @property
    def C(self) -> tuple[RatFun, ...]:
        return tuple(self.grid[i][0] for i in range(3))

    @property
    def Ap(self) -> tuple[RatFun, ...]:
        return tuple(self.grid[2][j] for j in range(3))

    @property
    def Bp(self) -> tuple[RatFun, ...]:
        return tuple(self.grid[1][j] for j in range(3))

    @property
    def Cp(self) -> tuple[RatFun, ...]:
        return tuple(self.grid[0][j] for j in range(3))

    def expanded(self) -> dict[tuple[int, int], RatFun]:
        """Affine K as {(x-exponent, y-exponent): coefficient}."""
        return {
            (i, j): self.grid[i][j]
            for i in range(3)
            for j in range(3)
            if not self.grid[i][j].is_zero()
        }

    def expanded_via_y(self) -> dict[tuple[int, int], RatFun]:
        out = {}
        for j, poly in ((2, self.A), (1, self.B), (0, self.C)):
            for i, c in enumerate(poly):
                if not c.is_zero():
                    out[(i, j)] = c
        return out

    def expanded_via_x(self) -> dict[tuple[int, int], RatFun]:
        out = {}
        for i, poly in ((2, self.Ap), (1, self.Bp), (0, self.Cp)):
            for j, c in enumerate(poly):
                if not c.is_zero():
                    out[(i, j)] = c
        return out

    def transpose(self) -> "Kernel":
        return build_kernel(self.model.transpose())


def build_kernel(m: WeightedModel) -> Kernel:
    t = RatFun.t()
    grid = []
    for i in range(3):
        row = []
        for j in range(3):
            c = -t * m.d(i - 1, j - 1)
            if i == 1 and j == 1:
                c = c + 1
            row.append(c)
        grid.append(tuple(row))
    return Kernel(m, tuple(grid))


# ---------------------------------------------------------------------------
# Discriminant and classification


def _poly_mul(p: Sequence[RatFun], q: Sequence[RatFun]) -> list[RatFun]:
    out = [RatFun(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return out


def discriminant_quartic(k: Kernel, axis: str = "x") -> BinaryQuartic:
    """B^2 - 4AC as a binary quartic in [x0:x1] (or [y0:y1] for axis 'y')."""
    if axis == "x":
        A, B, C = k.A, k.B, k.C
    elif axis == "y":
        A, B, C = k.Ap, k.Bp, k.Cp
    else:
        raise ValueError("axis must be 'x' or 'y'")
    bb = _poly_mul(B, B)
    ac = _poly_mul(A, C)
    return BinaryQuartic.from_affine([bb[i] - 4 * ac[i] for i in range(5)])


def _xt_poly(coeffs: Sequence[RatFun]):
    """Polynomial in Q[x, t] from x-coefficients lying in Q[t]."""
    return xt_poly_in_x(coeffs).num


class CurveClass(str, Enum):
    DEGENERATE = "Degenerate"
    GENUS_ZERO = "GenusZero"
    GENUS_ONE = "GenusOne"


@dataclass(frozen=True)
class Classification:
    tag: CurveClass
    reason: str = ""


def _has_common_factor(polys: Sequence[Sequence[RatFun]]) -> str | None:
    """Projective common factor of three quadratic forms, or None."""
    if all(p[2].is_zero() for p in polys):
        return "common root at infinity"
    g = None
    for p in polys:
        q = _xt_poly(p)
        if q.is_zero():
            continue
        g = q if g is None else g.gcd(q)
    if g is None:
        return "all coefficients vanish"
    if g.degrees()[0] > 0:
        return f"common factor {g}"
    return None


def _is_constant_times_square(q: BinaryQuartic) -> bool:
    """Whether a nonzero binary quartic is c * (quadratic form)^2 over an algebraic closure of Q(t)."""
    deg = q.affine_degree()
    if (4 - deg) % 2:
        return False
    p = _xt_poly([q.a0, q.a1, q.a2, q.a3, q.a4])
    _, factors = p.factor_squarefree()
    for f, e in factors:
        if f.degrees()[0] > 0 and int(e) % 2:
            return False
    return True


def classify_curve(k: Kernel) -> Classification:
    reason = _has_common_factor([k.A, k.B, k.C])
    if reason:
        return Classification(CurveClass.DEGENERATE, f"factor free of y: {reason}")
    reason = _has_common_factor([k.Ap, k.Bp, k.Cp])
    if reason:
        return Classification(CurveClass.DEGENERATE, f"factor free of x: {reason}")
    q = discriminant_quartic(k, "x")
    if q.is_zero():
        return Classification(CurveClass.DEGENERATE, "discriminant vanishes identically")
    if _is_constant_times_square(q):
        return Classification(CurveClass.DEGENERATE, "splits into two (1,1) factors")
    I, J = quartic_invariants(q)
    if (4 * I**3 - J * J).is_zero():
        return Classification(CurveClass.GENUS_ZERO, "discriminant quartic has a repeated root")
    return Classification(CurveClass.GENUS_ONE)


# ---------------------------------------------------------------------------
# Edge quadratics, special points, base points


def _squarefree_int(n: int) -> int:
    sign = -1 if n < 0 else 1
    n = abs(n)
    out, p = 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return sign * out * n


def constant_quadratic_roots(a, b, c) -> tuple[ProjCoord, ProjCoord]:
    """Roots in P1 of a*Y0^2 + b*Y0*Y1 + c*Y1^2 with rational a, b, c.

    Order: real roots ascending, infinity last; a conjugate pair (-b -+ s*sqrt(D))/(2a)
    with the minus sign first.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0 and b == 0 and c == 0:
        raise DegenerateFiberError("edge quadratic vanishes identically")
    inf = ProjCoord.infinity()
    if a == 0:
        if b == 0:
            return inf, inf
        return ProjCoord.affine(RatFun(-c / b)), inf
    disc = b * b - 4 * a * c
    s = rational_sqrt(disc)
    if s is not None:
        r1, r2 = sorted(((-b - s) / (2 * a), (-b + s) / (2 * a)))
        return ProjCoord.affine(RatFun(r1)), ProjCoord.affine(RatFun(r2))
    D = _squarefree_int(disc.numerator * disc.denominator)
    # sqrt(disc) = scale * sqrt(D)
    scale = rational_sqrt(disc / D)
    assert scale is not None
    lo = QuadExt(RatFun(-b / (2 * a)), RatFun(-scale / (2 * a)), D)
    hi = QuadExt(RatFun(-b / (2 * a)), RatFun(scale / (2 * a)), D)
    if a < 0 and D > 0:
        lo, hi = hi, lo
    return ProjCoord.affine(lo), ProjCoord.affine(hi)


@dataclass(frozen=True)
class SpecialPoints:
    P0: CurvePoint
    P1: CurvePoint
    Q0: CurvePoint
    Q1: CurvePoint
    iota1_Q0: CurvePoint
    iota1_Q1: CurvePoint

    @property
    def P(self) -> tuple[CurvePoint, CurvePoint]:
        return (self.P0, self.P1)

    @property
    def Q(self) -> tuple[CurvePoint, CurvePoint]:
        return (self.Q0, self.Q1)


def _edge(k: Kernel, which: str) -> tuple[Fraction, Fraction, Fraction]:
    d = k.model.d
    if which == "P":  # x = infinity, quadratic in y
        return d(1, 1), d(1, 0), d(1, -1)
    if which == "Q":  # y = infinity, quadratic in x
        return d(1, 1), d(0, 1), d(-1, 1)
    if which == "R":  # x = 0
        return d(-1, 1), d(-1, 0), d(-1, -1)
    if which == "S":  # y = 0
        return d(1, -1), d(0, -1), d(-1, -1)
    raise ValueError(which)


def _edge_points(k: Kernel, which: str) -> tuple[CurvePoint, CurvePoint]:
    r = constant_quadratic_roots(*_edge(k, which))
    if which == "P":
        return tuple(CurvePoint(ProjCoord.infinity(), y) for y in r)
    if which == "Q":
        return tuple(CurvePoint(x, ProjCoord.infinity()) for x in r)
    if which == "R":
        return tuple(CurvePoint(ProjCoord.affine(RatFun(0)), y) for y in r)
    return tuple(CurvePoint(x, ProjCoord.affine(RatFun(0))) for x in r)


def special_points(k: Kernel) -> SpecialPoints:
    P0, P1 = _edge_points(k, "P")
    Q0, Q1 = _edge_points(k, "Q")
    for p in (P0, P1, Q0, Q1):
        assert on_curve(k, p), p
    return SpecialPoints(P0, P1, Q0, Q1, iota1_point(k, Q0), iota1_point(k, Q1))


CORNERS = ("(0,0)", "(0,inf)", "(inf,0)", "(inf,inf)")


def _corner_of(p: CurvePoint) -> str | None:
    def kind(c: ProjCoord):
        if c.is_infinite:
            return "inf"
        if c.is_zero_coord():
            return "0"
        return None

    kx, ky = kind(p.x), kind(p.y)
    if kx is None or ky is None:
        return None
    return f"({kx},{ky})"


@dataclass(frozen=True)
class BasePointProfile:
    points: dict[str, CurvePoint]
    corner_multiplicity: dict[str, int]

    def point_multiplicities(self) -> dict[CurvePoint, int]:
        out: dict[CurvePoint, int] = {}
        for p in self.points.values():
            out[p] = out.get(p, 0) + 1
        return out


def base_points(k: Kernel) -> BasePointProfile:
    pts: dict[str, CurvePoint] = {}
    for which in ("P", "Q", "R", "S"):
        a, b = _edge_points(k, which)
        pts[f"{which}0"], pts[f"{which}1"] = a, b
    corners = {c: 0 for c in CORNERS}
    for p in pts.values():
        c = _corner_of(p)
        if c is not None:
            corners[c] += 1
    return BasePointProfile(pts, corners)

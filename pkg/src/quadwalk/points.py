"""Points of the kernel curve in P1 x P1 and the involutions acting on them.

Coordinates live in Q(t) (:class:`RatFun`) or in a quadratic extension
(:class:`QuadExt`). A projective coordinate is stored normalized: either
``(v, 1)`` or ``(1, 0)``, so point equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .algebra import QuadExt, RatFun, to_fraction

Field = Union[RatFun, QuadExt]


class DegenerateFiberError(ArithmeticError):
    """A fiber quadratic vanished identically."""


def _is_zero(v) -> bool:
    return v.is_zero()


def _field_of(v) -> object:
    return v.D if isinstance(v, QuadExt) else None


def _coerce(v) -> Field:
    return v if isinstance(v, (RatFun, QuadExt)) else RatFun.coerce(v)


@dataclass(frozen=True)
class ProjCoord:
    """Normalized point of P1: ``(v, 1)`` or ``(1, 0)``."""

    u0: Field
    u1: Field

    @classmethod
    def make(cls, u0, u1) -> "ProjCoord":
        u0, u1 = _coerce(u0), _coerce(u1)
        if _is_zero(u1):
            if _is_zero(u0):
                raise ValueError("[0:0] is not a projective point")
            return cls(RatFun(1), RatFun(0))
        if _is_zero(u0):
            return cls(RatFun(0), RatFun(1))
        return cls(u0 / u1, RatFun(1))

    @classmethod
    def infinity(cls) -> "ProjCoord":
        return cls(RatFun(1), RatFun(0))

    @classmethod
    def affine(cls, v) -> "ProjCoord":
        return cls(_coerce(v), RatFun(1))

    @property
    def is_infinite(self) -> bool:
        return _is_zero(self.u1)

    def is_zero_coord(self) -> bool:
        return not self.is_infinite and _is_zero(self.u0)

    @property
    def value(self) -> Field | None:
        """Affine value, or None at infinity."""
        return None if self.is_infinite else self.u0

    def field(self):
        return _field_of(self.u0)

    def t_degree(self) -> int:
        v = self.u0
        if isinstance(v, QuadExt):
            return max(v.a.degree(), v.b.degree())
        return v.degree()

    def __str__(self):
        if self.is_infinite:
            return "[1:0]"
        return f"[{self.u0}:1]"


@dataclass(frozen=True)
class CurvePoint:
    x: ProjCoord
    y: ProjCoord

    @classmethod
    def make(cls, x0, x1, y0, y1) -> "CurvePoint":
        return cls(ProjCoord.make(x0, x1), ProjCoord.make(y0, y1))

    def field(self):
        fx, fy = self.x.field(), self.y.field()
        if fx is not None and fy is not None and fx != fy:
            raise ValueError("coordinates in different quadratic fields")
        return fx if fx is not None else fy

    def t_degree(self) -> int:
        return max(self.x.t_degree(), self.y.t_degree())

    def __str__(self):
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class OrbitWitness:
    """tau^n(source) = target."""

    n: int
    source: CurvePoint
    target: CurvePoint

    def verify(self, k) -> bool:
        return tau_power_point(k, self.source, self.n) == self.target


def quad_form_value(q: Sequence, r: ProjCoord):
    a, b, c = q
    return a * r.u0 * r.u0 + b * r.u0 * r.u1 + c * r.u1 * r.u1


def other_root(q: Sequence, r: ProjCoord, *, check: bool = True) -> ProjCoord:
    """Second root of a*Y0^2 + b*Y0*Y1 + c*Y1^2 given the root r.

    Uses the product relation when it is defined, otherwise a sum relation.
    A double root comes back as r itself.
    """
    a, b, c = (_coerce(v) for v in q)
    if _is_zero(a) and _is_zero(b) and _is_zero(c):
        raise DegenerateFiberError("fiber quadratic vanishes identically")
    if not isinstance(r, ProjCoord):
        r = ProjCoord.make(*r)
    if check and not _is_zero(quad_form_value((a, b, c), r)):
        raise ValueError(f"{r} is not a root of the quadratic form")
    r0, r1 = r.u0, r.u1
    s0, s1 = c * r1, a * r0
    if _is_zero(s0) and _is_zero(s1):
        if not _is_zero(r1):
            s0, s1 = -b * r1 - a * r0, a * r1
        else:
            s0, s1 = c * r0, -b * r0 - c * r1
    return ProjCoord.make(s0, s1)


def _powers(p: ProjCoord):
    # (x0^i x1^(2-i)) for i = 0, 1, 2
    u0, u1 = p.u0, p.u1
    if p.is_infinite:
        return (RatFun(0), RatFun(0), RatFun(1))
    if _is_zero(u0):
        return (RatFun(1), RatFun(0), RatFun(0))
    return (RatFun(1), u0, u0 * u0)


def fiber_over_x(k, x: ProjCoord):
    """Coefficients (alpha, beta, gamma) of the y-quadratic over a fixed x."""
    px = _powers(x)
    g = k.grid
    out = []
    for j in (2, 1, 0):
        acc = RatFun(0)
        for i in range(3):
            if not g[i][j].is_zero() and not _is_zero(px[i]):
                acc = acc + g[i][j] * px[i]
        out.append(acc)
    return tuple(out)


def fiber_over_y(k, y: ProjCoord):
    """Coefficients of the x-quadratic over a fixed y."""
    py = _powers(y)
    g = k.grid
    out = []
    for i in (2, 1, 0):
        acc = RatFun(0)
        for j in range(3):
            if not g[i][j].is_zero() and not _is_zero(py[j]):
                acc = acc + g[i][j] * py[j]
        out.append(acc)
    return tuple(out)


def on_curve(k, p: CurvePoint) -> bool:
    return _is_zero(quad_form_value(fiber_over_x(k, p.x), p.y))


def iota1_point(k, p: CurvePoint, *, check: bool = True) -> CurvePoint:
    """Fix x, swap the y-root."""
    return CurvePoint(p.x, other_root(fiber_over_x(k, p.x), p.y, check=check))


def iota2_point(k, p: CurvePoint, *, check: bool = True) -> CurvePoint:
    """Fix y, swap the x-root."""
    return CurvePoint(other_root(fiber_over_y(k, p.y), p.x, check=check), p.y)


def tau_point(k, p: CurvePoint, *, check: bool = True) -> CurvePoint:
    return iota2_point(k, iota1_point(k, p, check=check), check=False)


def tau_inv_point(k, p: CurvePoint, *, check: bool = True) -> CurvePoint:
    return iota1_point(k, iota2_point(k, p, check=check), check=False)


def tau_power_point(k, p: CurvePoint, n: int) -> CurvePoint:
    step = tau_point if n >= 0 else tau_inv_point
    for _ in range(abs(n)):
        p = step(k, p, check=False)
    return p


class _Unreliable(Exception):
    """A specialization hit a pole or a degenerate formula."""


def _primes_below(count: int, below: int = 2**31) -> tuple[int, ...]:
    from flint import fmpz

    out, n = [], below - 1
    while len(out) < count:
        if fmpz(n).is_prime():
            out.append(n)
        n -= 1
    return tuple(out)


_PRIMES = _primes_below(24)


class ModularShadow:
    """The curve and tau reduced at t = t0 in F_p, with sqrt(D) sent to a fixed root.

    Reduction commutes with the involution formulas whenever the reduced
    formula gives a nonzero pair, so a mismatch here proves the exact points
    differ. Any degenerate step raises :class:`_Unreliable`.
    """

    def __init__(self, k, p: int, t0: int, D=None):
        self.p = p
        self.t0 = t0
        self.s = None
        if D is not None:
            from flint import nmod

            d = self.scalar(D)
            try:
                s = int(nmod(d, p).sqrt())
            except Exception:
                raise _Unreliable("D is not a square mod p") from None
            self.s = s
        self.grid = [[self.ratfun(c) for c in row] for row in k.grid]

    def scalar(self, q) -> int:
        q = to_fraction(q)
        if q.denominator % self.p == 0:
            raise _Unreliable("denominator divisible by p")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def ratfun(self, f: RatFun) -> int:
        p = self.p
        num = sum(self.scalar(c) * pow(self.t0, i, p) for i, c in enumerate(f.num.coeffs())) % p
        den = sum(self.scalar(c) * pow(self.t0, i, p) for i, c in enumerate(f.den.coeffs())) % p
        if den == 0:
            raise _Unreliable("pole at t0")
        return num * pow(den, -1, p) % p

    def value(self, v) -> int:
        if isinstance(v, QuadExt):
            if self.s is None:
                raise _Unreliable("no square root chosen")
            return (self.ratfun(v.a) + self.ratfun(v.b) * self.s) % self.p
        return self.ratfun(v)

    def coord(self, c: ProjCoord) -> tuple[int, int]:
        return (1, 0) if c.is_infinite else (self.value(c.u0), 1)

    def point(self, P: CurvePoint):
        return self.coord(P.x) + self.coord(P.y)

    def _norm(self, a: int, b: int) -> tuple[int, int]:
        p = self.p
        a, b = a % p, b % p
        if b:
            return (a * pow(b, -1, p) % p, 1)
        if a:
            return (1, 0)
        raise _Unreliable("degenerate projective pair")

    def _other(self, al, be, ga, r0, r1):
        p = self.p
        if al % p == 0 and be % p == 0 and ga % p == 0:
            raise _Unreliable("fiber quadratic vanishes mod p")
        s0, s1 = ga * r1 % p, al * r0 % p
        if s0 == 0 and s1 == 0:
            if r1:
                s0, s1 = (-be * r1 - al * r0) % p, al * r1 % p
            else:
                s0, s1 = ga * r0 % p, (-be * r0 - ga * r1) % p
        return self._norm(s0, s1)

    def _pw(self, c0, c1):
        return (c1 * c1 % self.p, c0 * c1 % self.p, c0 * c0 % self.p)

    def iota1(self, P):
        x0, x1, y0, y1 = P
        px = self._pw(x0, x1)
        g = self.grid
        al, be, ga = (sum(g[i][j] * px[i] for i in range(3)) for j in (2, 1, 0))
        return (x0, x1) + self._other(al, be, ga, y0, y1)

    def iota2(self, P):
        x0, x1, y0, y1 = P
        py = self._pw(y0, y1)
        g = self.grid
        al, be, ga = (sum(g[i][j] * py[j] for j in range(3)) for i in (2, 1, 0))
        return self._other(al, be, ga, x0, x1) + (y0, y1)

    def orbit(self, P, nmax: int, forward: bool) -> list:
        out = [P]
        for _ in range(nmax):
            q = out[-1]
            out.append(self.iota2(self.iota1(q)) if forward else self.iota1(self.iota2(q)))
        return out


def modular_shadows(k, field, count: int = 2) -> list[ModularShadow]:
    out = []
    t0 = 1000003
    for p in _PRIMES:
        if len(out) >= count:
            break
        for _ in range(3):
            t0 += 7919
            try:
                out.append(ModularShadow(k, p, t0 % p, field))
                break
            except _Unreliable:
                continue
    return out


def _filter_candidates(k, source, target, cands, field) -> list[int]:
    """Candidates that survive every modular shadow (unreliable ones always survive)."""
    if not cands:
        return []
    nmax = max(abs(n) for n in cands)
    alive = set(cands)
    for sh in modular_shadows(k, field):
        try:
            s = sh.point(source)
            tgt = sh.point(target)
            fwd = sh.orbit(s, max(0, max(cands)), True)
            bwd = sh.orbit(s, max(0, -min(cands)), False)
        except _Unreliable:
            continue
        alive = {n for n in alive if (fwd[n] if n >= 0 else bwd[-n]) == tgt}
    return [n for n in cands if n in alive]


def same_orbit(
    k,
    source: CurvePoint,
    target: CurvePoint,
    candidates: Iterable[int],
    *,
    prefilter: bool = True,
) -> OrbitWitness | None:
    """Smallest-|n| candidate with tau^n(source) = target, verified exactly.

    With ``prefilter`` the candidates are first screened in reductions
    modulo primes; a candidate is only dropped when a reduction proves
    the points differ.
    """
    cands = sorted(set(int(n) for n in candidates), key=lambda n: (abs(n), n))
    if not cands:
        return None
    try:
        fs, ft = source.field(), target.field()
    except ValueError:
        return None
    if fs is not None and ft is not None and fs != ft:
        return None
    if (fs is None) != (ft is None):
        # tau is defined over Q(t): it never moves a point between fields
        return None
    if prefilter:
        cands = _filter_candidates(k, source, target, cands, fs)
        if not cands:
            return None
    pos = [source]
    neg = [source]
    for n in cands:
        chain, step = (pos, tau_point) if n >= 0 else (neg, tau_inv_point)
        while len(chain) <= abs(n):
            chain.append(step(k, chain[-1], check=False))
        if chain[abs(n)] == target:
            return OrbitWitness(n, source, target)
    return None

"""Weierstrass valuations at t = 0, Kodaira fiber types and candidate heights.

The orbit question tau^n(N) = M is narrowed down by heights: with h(nP) =
n^2 h(P), only n with n^2 = h(M)/h(N) for some admissible heights can work.
Admissible heights are 2 minus a sum of local contributions, one per reducible
fiber, drawn from the fiber's root lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpq_poly

from .algebra import poly_valuation_at_zero, quartic_invariants, rational_sqrt, valuation_at_zero
from .kernel import BasePointProfile, Kernel, discriminant_quartic

INF = math.inf


class KodairaError(ArithmeticError):
    """Valuation triple outside the supported rows (types II / II* or bad data)."""


class FiberMismatchError(AssertionError):
    """Base-point component count disagrees with the discriminant order."""


@dataclass(frozen=True)
class WeierstrassValuations:
    ord_g2: float  # int or INF when the invariant vanishes
    ord_g3: float
    ord_delta: int

    def __post_init__(self):
        if self.ord_g2 >= 4 and self.ord_g3 >= 6:
            raise ValueError("valuations not minimal")

    def as_tuple(self):
        return (self.ord_g2, self.ord_g3, self.ord_delta)


def _ord(f) -> float:
    return INF if f.is_zero() else valuation_at_zero(f)


def weierstrass_valuations(k: Kernel) -> WeierstrassValuations:
    I, J = quartic_invariants(discriminant_quartic(k, "x"))
    delta = 4 * I**3 - J * J
    if delta.is_zero():
        raise ArithmeticError("discriminant vanishes: curve is not of genus one")
    a, b, c = _ord(I), _ord(J), valuation_at_zero(delta)
    while a >= 4 and b >= 6:
        a, b, c = a - 4, b - 6, c - 12
    return WeierstrassValuations(a, b, c)


@dataclass(frozen=True)
class RootLatticeSummand:
    family: str  # "A", "D" or "E"
    rank: int

    def __post_init__(self):
        ok = (
            (self.family == "A" and self.rank >= 1)
            or (self.family == "D" and self.rank >= 4)
            or (self.family == "E" and self.rank in (6, 7))
        )
        if not ok:
            raise ValueError(f"unsupported root lattice {self.family}{self.rank}")

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class KodairaType:
    symbol: str  # "Smooth", "I", "I*", "II", "II*", "III", "III*", "IV", "IV*"
    n: int | None = None

    def __str__(self):
        if self.symbol == "I":
            return f"I{self.n}"
        if self.symbol == "I*":
            return f"I{self.n}*"
        return self.symbol

    @property
    def lattice(self) -> RootLatticeSummand | None:
        s, n = self.symbol, self.n
        if s == "I" and n >= 2:
            return RootLatticeSummand("A", n - 1)
        if s == "I*":
            return RootLatticeSummand("D", n + 4)
        return {
            "III": RootLatticeSummand("A", 1),
            "IV": RootLatticeSummand("A", 2),
            "IV*": RootLatticeSummand("E", 6),
            "III*": RootLatticeSummand("E", 7),
        }.get(s)


def kodaira_type_at_zero(v: WeierstrassValuations) -> KodairaType:
    a, b, c = v.ord_g2, v.ord_g3, v.ord_delta
    if c == 0:
        return KodairaType("Smooth")
    if a == 0 and b == 0:
        return KodairaType("I", c)
    if a >= 2 and b >= 3 and c == 6:
        return KodairaType("I*", 0)
    if a == 2 and b == 3 and c > 6:
        return KodairaType("I*", c - 6)
    if a == 1 and b >= 2 and c == 3:
        return KodairaType("III")
    if a == 3 and b >= 5 and c == 9:
        return KodairaType("III*")
    if a >= 2 and b == 2 and c == 4:
        return KodairaType("IV")
    if a >= 3 and b == 4 and c == 8:
        return KodairaType("IV*")
    if a >= 1 and b == 1 and c == 2:
        raise KodairaError("fiber of type II at t=0")
    if a >= 4 and b == 5 and c == 10:
        raise KodairaError("fiber of type II* at t=0 (only torsion sections)")
    raise KodairaError(f"valuations {v.as_tuple()} match no fiber type")


def fiber_components_from_base_points(bp: BasePointProfile) -> int:
    """4 + sum over corners of (multiplicity - 1)."""
    for corner, m in bp.corner_multiplicity.items():
        if m > 3:
            raise FiberMismatchError(f"corner {corner} has multiplicity {m} > 3")
    return 4 + sum(max(0, m - 1) for m in bp.corner_multiplicity.values())


def check_fiber_consistency(bp: BasePointProfile, kt: KodairaType) -> int:
    n = fiber_components_from_base_points(bp)
    if kt.symbol != "I" or kt.n != n:
        raise FiberMismatchError(f"base points predict I{n}, discriminant gives {kt}")
    return n


def contribution_set(s: RootLatticeSummand) -> frozenset[Fraction]:
    if s.family == "A":
        m = s.rank + 1
        return frozenset(Fraction(i * (m - i), m) for i in range(m))
    if s.family == "D":
        n = s.rank - 4
        return frozenset({Fraction(0), Fraction(1), 1 + Fraction(n, 4)})
    if s.rank == 6:
        return frozenset({Fraction(0), Fraction(4, 3)})
    return frozenset({Fraction(0), Fraction(3, 2)})


def lattices_up_to_rank(r: int) -> list[RootLatticeSummand]:
    out = [RootLatticeSummand("A", k) for k in range(1, r + 1)]
    out += [RootLatticeSummand("D", k) for k in range(4, r + 1)]
    out += [RootLatticeSummand("E", k) for k in (6, 7) if k <= r]
    return out


def companion_sums(budget: int) -> frozenset[Fraction]:
    """All totals of contributions from multisets of lattices with rank sum <= budget."""
    reach: dict[int, set[Fraction]] = {0: {Fraction(0)}}
    for lat in lattices_up_to_rank(budget):
        cs = contribution_set(lat)
        # unbounded knapsack: allow repeats of the same lattice
        for used in range(lat.rank, budget + 1):
            src = reach.get(used - lat.rank)
            if not src:
                continue
            dst = reach.setdefault(used, set())
            dst.update(a + c for a in src for c in cs)
    out = set()
    for s in reach.values():
        out |= s
    return frozenset(out)


@dataclass(frozen=True)
class HeightCandidates:
    values: frozenset[Fraction]

    def __post_init__(self):
        for h in self.values:
            if not (0 <= h <= 2):
                raise ValueError(f"height candidate {h} outside [0, 2]")

    def __contains__(self, h):
        return Fraction(h) in self.values

    def sorted(self) -> list[Fraction]:
        return sorted(self.values)


def height_candidates(
    n0: int,
    component: int | Iterable[int] | None = None,
    companions: Sequence[Sequence[RootLatticeSummand]] | None = None,
) -> HeightCandidates:
    """Candidate heights 2 - contr_0 - sum(companion contributions).

    By default every component index of the I_{n0} fiber and every multiset of
    companion lattices of total rank <= 8 - (n0 - 1) is allowed. ``component``
    pins the index (or indices) the section meets; ``companions`` replaces the
    enumeration with an explicit list of companion lattice multisets.
    """
    if n0 < 1:
        raise ValueError("n0 must be positive")
    if n0 > 9:
        raise ValueError(f"I{n0} at t=0 impossible on a rational elliptic surface (n0 <= 9)")
    if component is None:
        idx = range(n0)
    elif isinstance(component, int):
        idx = [component]
    else:
        idx = list(component)
    c0 = {Fraction(i * (n0 - i), n0) for i in idx}
    if companions is None:
        extra = companion_sums(8 - (n0 - 1))
    else:
        extra = {Fraction(0)}
        sums: set[Fraction] = set()
        for combo in companions:
            partial = {Fraction(0)}
            for lat in combo:
                partial = {a + c for a in partial for c in contribution_set(lat)}
            sums |= partial
        extra = sums or extra
    vals = {2 - a - b for a in c0 for b in extra}
    return HeightCandidates(frozenset(h for h in vals if h >= 0))


def candidate_multipliers(H_M: HeightCandidates, H_N: HeightCandidates, cap: int = 25) -> frozenset[int]:
    """All n with 1 <= |n| <= cap and n^2 = h_M / h_N."""
    out = set()
    for hn in H_N.values:
        if hn == 0:
            continue
        for hm in H_M.values:
            r = rational_sqrt(hm / hn)
            if r is not None and r.denominator == 1 and 1 <= r <= cap:
                out |= {int(r), -int(r)}
    return frozenset(out)


@dataclass(frozen=True)
class DeltaProfile:
    ord_zero: int
    finite: tuple[int, ...]  # multiplicities of nonzero finite roots over the algebraic closure
    at_infinity: int

    @property
    def multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.finite + ((self.at_infinity,) if self.at_infinity else ())))

    @property
    def has_repeated_nonzero_root(self) -> bool:
        """Repeated root away from t = 0, counting t = infinity."""
        return any(m >= 2 for m in self.multiset)


def delta_multiplicity_profile(k: Kernel) -> DeltaProfile:
    I, J = quartic_invariants(discriminant_quartic(k, "x"))
    delta = 4 * I**3 - J * J
    if delta.is_zero():
        raise ArithmeticError("discriminant vanishes")
    assert delta.den.degree() == 0
    p: fmpq_poly = delta.num
    o = poly_valuation_at_zero(p)
    rest = fmpq_poly(p.coeffs()[o:])
    mults: list[int] = []
    if rest.degree() > 0:
        _, factors = rest.factor_squarefree()
        for f, e in factors:
            mults += [int(e)] * f.degree()
    return DeltaProfile(o, tuple(sorted(mults)), 12 - p.degree())

"""Independent combinatorial oracle: weighted walk counts in the quadrant.

The counts give the series Q(x, y, t) directly, so the kernel functional
equation can be checked coefficient by coefficient without any of the
curve machinery.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .model import STEPS, WeightedModel

Mono = tuple[int, int, int]  # (power of t, power of x, power of y)


@dataclass
class CountTable:
    """q[(i, j, n)]: weighted number of n-step quadrant walks from (0,0) to (i,j)."""

    N: int
    q: dict[tuple[int, int, int], Fraction] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int, int]) -> Fraction:
        return self.q.get(key, Fraction(0))

    def rows(self):
        """(n, i, j, value) for every nonzero entry, sorted."""
        for (i, j, n), v in sorted(self.q.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])):
            yield n, i, j, v

    def total(self, n: int) -> Fraction:
        return sum((v for (i, j, m), v in self.q.items() if m == n), Fraction(0))

    def corrupted(self, key=(0, 0, 2), delta=Fraction(1)) -> "CountTable":
        """Copy with one entry perturbed (negative control)."""
        q = dict(self.q)
        q[key] = q.get(key, Fraction(0)) + delta
        return CountTable(self.N, q)


def count_walks(m: WeightedModel, N: int) -> CountTable:
    if N < 0:
        raise ValueError("N must be nonnegative")
    steps = [(a, b, m.d(a, b)) for (a, b) in STEPS if m.d(a, b) != 0]
    layer = {(0, 0): Fraction(1)}
    q = {(0, 0, 0): Fraction(1)}
    for n in range(N):
        nxt: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
        for (i, j), v in layer.items():
            for a, b, w in steps:
                ii, jj = i + a, j + b
                if ii >= 0 and jj >= 0:
                    nxt[(ii, jj)] += w * v
        layer = {k: v for k, v in nxt.items() if v != 0}
        for (i, j), v in layer.items():
            q[(i, j, n + 1)] = v
    return CountTable(N, q)


class TruncatedSeries:
    """Polynomial in x, y with coefficients in Q[t], truncated above t^N."""

    def __init__(self, N: int, terms: dict[Mono, Fraction] | None = None):
        self.N = N
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0 and k[0] <= N}

    @classmethod
    def from_table(cls, table: CountTable, N: int | None = None) -> "TruncatedSeries":
        N = table.N if N is None else N
        return cls(N, {(n, i, j): v for (i, j, n), v in table.q.items()})

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return TruncatedSeries(min(self.N, other.N), out)

    def __neg__(self):
        return TruncatedSeries(self.N, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        N = min(self.N, other.N)
        out: dict[Mono, Fraction] = defaultdict(Fraction)
        for (n1, i1, j1), a in self.terms.items():
            for (n2, i2, j2), b in other.terms.items():
                if n1 + n2 <= N:
                    out[(n1 + n2, i1 + i2, j1 + j2)] += a * b
        return TruncatedSeries(N, out)

    def restrict(self, x_zero: bool = False, y_zero: bool = False) -> "TruncatedSeries":
        """Substitute x = 0 and/or y = 0."""
        return TruncatedSeries(
            self.N,
            {
                k: v
                for k, v in self.terms.items()
                if not (x_zero and k[1] != 0) and not (y_zero and k[2] != 0)
            },
        )

    def is_zero(self) -> bool:
        return not self.terms


def kernel_series(m: WeightedModel, N: int) -> TruncatedSeries:
    """K = xy - t * sum d_{a,b} x^(a+1) y^(b+1)."""
    terms: dict[Mono, Fraction] = defaultdict(Fraction)
    terms[(0, 1, 1)] += 1
    for a, b in STEPS:
        w = m.d(a, b)
        if w:
            terms[(1, a + 1, b + 1)] -= w
    return TruncatedSeries(N, terms)


def functional_equation_residual(m: WeightedModel, N: int, table: CountTable | None = None) -> TruncatedSeries:
    """K Q - (xy - F1 - F2 + t d_{-1,-1} Q(0,0,t)) through order t^N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    table = table if table is not None else count_walks(m, N)
    Q = TruncatedSeries.from_table(table, N)
    K = kernel_series(m, N)
    F1 = -(K.restrict(y_zero=True) * Q.restrict(y_zero=True))
    F2 = -(K.restrict(x_zero=True) * Q.restrict(x_zero=True))
    corner = TruncatedSeries(N, {(1, 0, 0): m.d(-1, -1)}) * Q.restrict(x_zero=True, y_zero=True)
    xy = TruncatedSeries(N, {(0, 1, 1): Fraction(1)})
    return K * Q - (xy - F1 - F2 + corner)


def check_functional_equation(m: WeightedModel, N: int = 12, table: CountTable | None = None) -> bool:
    return functional_equation_residual(m, N, table).is_zero()

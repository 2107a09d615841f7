"""End-to-end decision: is the generating series differentially algebraic?"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .heights import (
    candidate_multipliers,
    check_fiber_consistency,
    height_candidates,
    kodaira_type_at_zero,
    weierstrass_valuations,
)
from .function_field import tau_order
from .kernel import (
    CurveClass,
    Kernel,
    SpecialPoints,
    base_points,
    build_kernel,
    classify_curve,
    special_points,
)
from .model import WeightedModel
from .points import (
    CurvePoint,
    OrbitWitness,
    ProjCoord,
    iota1_point,
    iota2_point,
    same_orbit,
)
from .algebra import RatFun


class VerdictTag(str, Enum):
    DEGENERATE = "DegenerateAlgebraic"
    GENUS_ZERO = "GenusZeroDTranscendental"
    FINITE_GROUP = "FiniteGroupDFinite"
    DECOUPLED = "DecoupledDAlgebraic"
    NOT_DECOUPLED = "NotDecoupledDTranscendental"


ALWAYS_CERTIFICATE = "always-certificate"


@dataclass
class DecideOptions:
    max_tau_order: int = 6
    window: int = 25
    use_heights: bool = True
    multiplier_cap: int = 25


@dataclass(frozen=True)
class FixedPointProfile:
    """name -> (fixed by iota1, fixed by iota2) for P0, P1, Q0, Q1."""

    flags: dict[str, tuple[bool, bool]]

    def any_fixed(self, prefix: str) -> bool:
        return any(a or b for name, (a, b) in self.flags.items() if name.startswith(prefix))

    def as_text(self) -> str:
        parts = []
        for name, (a, b) in self.flags.items():
            tags = [s for s, f in (("i1", a), ("i2", b)) if f]
            parts.append(f"{name}:{'+'.join(tags) if tags else '-'}")
        return " ".join(parts)


def fixed_point_profile(k: Kernel, sp: SpecialPoints) -> FixedPointProfile:
    flags = {}
    for name, p in (("P0", sp.P0), ("P1", sp.P1), ("Q0", sp.Q0), ("Q1", sp.Q1)):
        flags[name] = (iota1_point(k, p) == p, iota2_point(k, p) == p)
    return FixedPointProfile(flags)


@dataclass
class Verdict:
    tag: VerdictTag
    reason: str = ""
    tau_order: int | None = None
    witness: OrbitWitness | None = None
    marker: str | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.tag is VerdictTag.DECOUPLED and self.witness is None and self.marker is None:
            raise ValueError("decoupled verdict needs a witness or the always-certificate marker")
        if self.tag is VerdictTag.FINITE_GROUP and self.tau_order is None:
            raise ValueError("finite-group verdict needs the tau order")


ZERO_INF = CurvePoint(ProjCoord.affine(RatFun(0)), ProjCoord.infinity())


def _case_b2(k: Kernel, sp: SpecialPoints) -> tuple[int, int] | None:
    """(j, k) with P_j = Q_k and Q_{1-k} = (0, inf) fixed by iota1."""
    for j, P in enumerate(sp.P):
        for kk, Q in enumerate(sp.Q):
            other = sp.Q[1 - kk]
            if P == Q and other == ZERO_INF and iota1_point(k, other) == other:
                return j, kk
    return None


def _search(k, pairs, heights_cands, window, diag) -> OrbitWitness | None:
    """Search every pairing over the window; return the smallest-|n| witness.

    Also records whether the heights-derived candidates find a witness
    exactly when the plain window does.
    """
    found = []
    agree = True
    for name, (src, dst) in pairs:
        w_window = same_orbit(k, src, dst, window)
        if heights_cands is not None:
            w_heights = same_orbit(k, src, dst, heights_cands)
            if (w_window is None) != (w_heights is None):
                agree = False
        diag.setdefault("pairings", []).append(f"{name}:{w_window.n if w_window else 'none'}")
        if w_window is not None:
            found.append(w_window)
    diag["heights_window_agree"] = agree
    if not found:
        return None
    return min(found, key=lambda w: (abs(w.n), w.n))


def decide(m: WeightedModel, options: DecideOptions | None = None) -> Verdict:
    opts = options or DecideOptions()
    k = build_kernel(m)
    diag: dict[str, Any] = {}
    cls = classify_curve(k)
    diag["curve_class"] = cls.tag.value
    if cls.tag is CurveClass.DEGENERATE:
        return Verdict(VerdictTag.DEGENERATE, cls.reason, diagnostics=diag)
    if cls.tag is CurveClass.GENUS_ZERO:
        return Verdict(VerdictTag.GENUS_ZERO, cls.reason, diagnostics=diag)

    order = tau_order(k, opts.max_tau_order)
    diag["tau_order"] = order if order is not None else "infinite"
    if order is not None:
        return Verdict(VerdictTag.FINITE_GROUP, f"tau has order {order}", tau_order=order, diagnostics=diag)

    vals = weierstrass_valuations(k)
    kt = kodaira_type_at_zero(vals)
    bp = base_points(k)
    n0 = check_fiber_consistency(bp, kt)
    diag["valuations"] = vals.as_tuple()
    diag["fiber_type"] = str(kt)
    diag["corner_multiplicities"] = dict(bp.corner_multiplicity)

    sp = special_points(k)
    fpp = fixed_point_profile(k, sp)
    diag["fixed_points"] = fpp.as_text()
    if fpp.any_fixed("P") and fpp.any_fixed("Q"):
        return Verdict(
            VerdictTag.NOT_DECOUPLED,
            "some P and some Q are fixed by an involution: b has no certificate",
            diagnostics=diag,
        )

    heights_cands = None
    if opts.use_heights:
        H = height_candidates(n0)
        mults = candidate_multipliers(H, H, opts.multiplier_cap)
        heights_cands = sorted(mults)
        diag["candidate_heights"] = [str(h) for h in H.sorted()]
        diag["candidate_multipliers"] = heights_cands
    window = [n for n in range(-opts.window, opts.window + 1) if n != 0]

    if m.d(1, 1) == 0:
        b2 = _case_b2(k, sp)
        if b2 is not None:
            j, _ = b2
            w = same_orbit(k, sp.P[1 - j], sp.P[j], [2])
            if w is None:
                raise AssertionError("case b.2 without tau^2(P_{j+1}) = P_j")
            diag["pairings"] = [f"P{1 - j}->P{j}:2"]
            return Verdict(
                VerdictTag.DECOUPLED,
                "P_j = Q_k and Q_{k+1} = (0,inf) fixed by iota1: certificate always exists",
                witness=w,
                marker=ALWAYS_CERTIFICATE,
                diagnostics=diag,
            )
        pairs = [("P0->P1", (sp.P0, sp.P1))]
    else:
        pairs = [("P0->Q0", (sp.P0, sp.Q0)), ("P0->Q1", (sp.P0, sp.Q1))]

    w = _search(k, pairs, heights_cands, window, diag)
    if w is not None:
        if not w.verify(k):
            raise AssertionError("orbit witness failed re-verification")
        return Verdict(VerdictTag.DECOUPLED, f"tau^{w.n} maps {w.source} to {w.target}", witness=w, diagnostics=diag)
    return Verdict(VerdictTag.NOT_DECOUPLED, "no orbit relation between the pole points", diagnostics=diag)

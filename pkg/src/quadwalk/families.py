"""Weighted families with a closed-form decoupling condition, and samplers for them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .decider import VerdictTag
from .model import NAMED_STEP_SETS, WeightedModel


def random_weight(rng: random.Random, max_num: int = 9, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def wiic2_condition(m: WeightedModel) -> Fraction:
    d = m.d
    return d(0, 1) * d(0, -1) - d(1, 1) * d(-1, -1)


def ib6_condition(m: WeightedModel) -> Fraction:
    d = m.d
    return d(-1, 1) * d(0, -1) ** 2 - d(0, 1) * d(-1, -1) * d(0, -1) + d(1, 1) * d(-1, -1) ** 2


def gb_condition(m: WeightedModel) -> Fraction:
    d = m.d
    return d(1, 0) * d(-1, 0) - d(1, -1) * d(-1, 1)


class SampleStats:
    """Draws rejected because tau had finite order (outside the orbit criterion's regime)."""

    finite_group_rejections = 0


def _infinite_group(m: WeightedModel) -> bool:
    from .function_field import tau_order
    from .kernel import build_kernel

    return tau_order(build_kernel(m)) is None


def _sample(rng, steps, on: bool, condition, solve_step, solve, infinite_group: bool = True) -> WeightedModel:
    """Random positive weights; on the condition, solve_step is determined by ``solve``.

    With ``infinite_group`` the draw is repeated until tau has infinite order.
    """
    while True:
        w = {s: random_weight(rng) for s in steps}
        if on:
            v = solve(w)
            if v is None or v <= 0:
                continue
            w[solve_step] = v
        m = WeightedModel(w)
        if (condition(m) == 0) != on:
            continue
        if infinite_group and not _infinite_group(m):
            SampleStats.finite_group_rejections += 1
            continue
        return m


def sample_wiic2(rng: random.Random, on: bool) -> WeightedModel:
    steps = NAMED_STEP_SETS["wIIC.2"]
    return _sample(
        rng, steps, on, wiic2_condition, (1, 1),
        lambda w: w[(0, 1)] * w[(0, -1)] / w[(-1, -1)],
    )


def sample_ib6(rng: random.Random, on: bool) -> WeightedModel:
    steps = NAMED_STEP_SETS["IB.6"]

    def solve(w):
        return (w[(0, 1)] * w[(-1, -1)] * w[(0, -1)] - w[(1, 1)] * w[(-1, -1)] ** 2) / w[(0, -1)] ** 2

    return _sample(rng, steps, on, ib6_condition, (-1, 1), solve)


def sample_gb(rng: random.Random, on: bool) -> WeightedModel:
    steps = NAMED_STEP_SETS["GB"]
    return _sample(
        rng, steps, on, gb_condition, (1, 0),
        lambda w: w[(1, -1)] * w[(-1, 1)] / w[(-1, 0)],
        infinite_group=False,
    )


@dataclass(frozen=True)
class Family:
    name: str
    sample: Callable[[random.Random, bool], WeightedModel]
    condition: Callable[[WeightedModel], Fraction]
    tag_on: VerdictTag
    tag_off: VerdictTag


FAMILIES = {
    "wIIC2": Family("wIIC2", sample_wiic2, wiic2_condition, VerdictTag.DECOUPLED, VerdictTag.NOT_DECOUPLED),
    "IB6": Family("IB6", sample_ib6, ib6_condition, VerdictTag.DECOUPLED, VerdictTag.NOT_DECOUPLED),
    "GB": Family("GB", sample_gb, gb_condition, VerdictTag.FINITE_GROUP, VerdictTag.NOT_DECOUPLED),
}

"""Sweep the shipped unweighted step sets and tally verdicts up to x<->y symmetry."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .decider import DecideOptions, VerdictTag, decide
from .model import WeightedModel, unweighted_step_sets

Steps = tuple[tuple[int, int], ...]


def canonical(steps) -> Steps:
    """Representative of a step set under the diagonal reflection."""
    a = tuple(sorted(tuple(s) for s in steps))
    b = tuple(sorted((j, i) for i, j in a))
    return min(a, b)


def symmetry_classes(step_sets) -> list[Steps]:
    return sorted({canonical(s) for s in step_sets})


@dataclass
class SweepResult:
    verdicts: dict[Steps, VerdictTag] = field(default_factory=dict)

    def counts(self) -> Counter:
        return Counter(v for v in self.verdicts.values())

    @property
    def total(self) -> int:
        return len(self.verdicts)

    @property
    def non_d_finite(self) -> int:
        return self.total - self.counts()[VerdictTag.FINITE_GROUP]


def _decide_one(args):
    steps, window = args
    return steps, decide(WeightedModel.unweighted(steps), DecideOptions(window=window)).tag


def sweep(workers: int = 1, window: int = 25) -> SweepResult:
    data = unweighted_step_sets()
    classes = symmetry_classes(data["genus_zero"]) + symmetry_classes(data["genus_one"])
    jobs = [(c, window) for c in classes]
    res = SweepResult()
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            for steps, tag in ex.map(_decide_one, jobs):
                res.verdicts[steps] = tag
    else:
        for job in jobs:
            steps, tag = _decide_one(job)
            res.verdicts[steps] = tag
    return res

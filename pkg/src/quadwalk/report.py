"""Run reports with a line-oriented text form and a JSON form that round-trip."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

LIST_FIELDS = ("candidate_heights", "candidate_multipliers", "pairings", "rows")


@dataclass
class RunReport:
    command: str
    source: str | None = None
    model: str | None = None
    curve_class: str | None = None
    tau_order: str | None = None
    fixed_points: str | None = None
    valuations: str | None = None
    fiber_type: str | None = None
    base_point_components: str | None = None
    delta_profile: str | None = None
    candidate_heights: list[str] = field(default_factory=list)
    candidate_multipliers: list[str] = field(default_factory=list)
    pairings: list[str] = field(default_factory=list)
    witness: str | None = None
    marker: str | None = None
    result: str | None = None
    verdict: str | None = None
    reason: str | None = None
    stage: str | None = None
    error: str | None = None
    elapsed: str | None = None
    rows: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name in LIST_FIELDS:
                if v:
                    lines.append(f"{f.name}: {' | '.join(v)}")
            elif v is not None:
                lines.append(f"{f.name}: {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunReport":
        kw: dict = {}
        names = {f.name for f in fields(cls)}
        for line in text.splitlines():
            if not line.strip():
                continue
            key, sep, val = line.partition(": ")
            if not sep:
                key, val = line.rstrip(":"), ""
            if key not in names:
                raise ValueError(f"unknown report key {key!r}")
            kw[key] = val.split(" | ") if key in LIST_FIELDS else val
        return cls(**kw)

    def to_structured(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v not in (None, [])}

    def to_json(self) -> str:
        return json.dumps(self.to_structured(), indent=2, sort_keys=False)

    @classmethod
    def from_structured(cls, obj: dict) -> "RunReport":
        return cls(**obj)

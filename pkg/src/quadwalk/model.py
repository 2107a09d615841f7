"""Weighted small-step models and the plain-text model file format."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import to_fraction

STEPS = tuple((i, j) for i in (-1, 0, 1) for j in (-1, 0, 1))

STEP_NAMES = {
    "N": (0, 1),
    "NE": (1, 1),
    "E": (1, 0),
    "SE": (1, -1),
    "S": (0, -1),
    "SW": (-1, -1),
    "W": (-1, 0),
    "NW": (-1, 1),
    "0": (0, 0),
}
NAME_OF_STEP = {v: k for k, v in STEP_NAMES.items()}


class ModelError(ValueError):
    """Invalid model (bad weights or violated invariant)."""


class ModelParseError(ValueError):
    """Malformed model file; carries a line/column position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class WeightedModel:
    """Weights d[i, j] for steps (i, j) in {-1, 0, 1}^2.

    ``include_origin`` controls whether the (0, 0) weight enters the
    inventory. Set ``validate=False`` to build the trivially degenerate
    models the invariant would otherwise reject.
    """

    weights: tuple[tuple[tuple[int, int], Fraction], ...]
    include_origin: bool = True
    name: str = ""

    def __init__(
        self,
        weights: Mapping[tuple[int, int], object] | Iterable,
        include_origin: bool = True,
        name: str = "",
        validate: bool = True,
        nonnegative: bool = False,
    ):
        items = dict(weights.items() if isinstance(weights, Mapping) else weights)
        clean: dict[tuple[int, int], Fraction] = {}
        for step, w in items.items():
            step = (int(step[0]), int(step[1]))
            if step not in STEPS:
                raise ModelError(f"step {step} outside {{-1,0,1}}^2")
            w = to_fraction(w)
            if nonnegative and w < 0:
                raise ModelError(f"negative weight {w} for step {step}")
            if w != 0:
                clean[step] = w
        object.__setattr__(self, "weights", tuple(sorted(clean.items())))
        object.__setattr__(self, "include_origin", include_origin)
        object.__setattr__(self, "name", name)
        if validate:
            self.check_invariant()

    def check_invariant(self) -> None:
        ups = any(self.d(i, j) != 0 for (i, j) in STEPS if i == 1 or j == 1)
        downs = any(self.d(i, j) != 0 for (i, j) in STEPS if i == -1 or j == -1)
        if not (ups and downs):
            raise ModelError(
                "model needs a nonzero weight with i=1 or j=1 and one with i=-1 or j=-1"
            )

    def d(self, i: int, j: int) -> Fraction:
        if (i, j) == (0, 0) and not self.include_origin:
            return Fraction(0)
        for s, w in self.weights:
            if s == (i, j):
                return w
        return Fraction(0)

    @property
    def support(self) -> frozenset[tuple[int, int]]:
        return frozenset(s for s, _ in self.weights)

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.weights)

    def transpose(self) -> "WeightedModel":
        return WeightedModel(
            {(j, i): w for (i, j), w in self.weights},
            include_origin=self.include_origin,
            name=self.name + "^T" if self.name else "",
            validate=False,
        )

    def scaled(self, c) -> "WeightedModel":
        c = to_fraction(c)
        return WeightedModel(
            {s: c * w for s, w in self.weights},
            include_origin=self.include_origin,
            name=self.name,
            validate=False,
        )

    def describe(self) -> str:
        parts = []
        for s, w in self.weights:
            parts.append(f"{NAME_OF_STEP[s]}={w}")
        return ", ".join(parts)

    def to_text(self) -> str:
        return "".join(f"{NAME_OF_STEP[s]}: {w}\n" for s, w in self.weights)

    @classmethod
    def unweighted(cls, steps: Iterable, **kw) -> "WeightedModel":
        return cls({tuple(s): 1 for s in steps}, **kw)


# ---------------------------------------------------------------------------
# Model file parsing

_WEIGHT_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/[+-]?\d+)?$")


def parse_weight(text: str, line: int | None = None, column: int | None = None) -> Fraction:
    """Exact weight from a decimal or p/q string."""
    s = text.strip()
    if not s or not _WEIGHT_RE.match(s):
        raise ModelParseError(f"malformed weight {text!r}", line, column)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ModelParseError(f"malformed weight {text!r}: {e}", line, column) from None


def parse_step(text: str, line: int | None = None, column: int | None = None) -> tuple[int, int]:
    s = text.strip().strip("()").replace(" ", "")
    if s.upper() in STEP_NAMES:
        return STEP_NAMES[s.upper()]
    m = re.fullmatch(r"([+-]?\d+),([+-]?\d+)", s)
    if m:
        step = (int(m.group(1)), int(m.group(2)))
        if step in STEPS:
            return step
    raise ModelParseError(f"unknown step {text.strip()!r}", line, column)


def parse_model_text(text: str, *, nonnegative: bool = True, include_origin: bool = True, name: str = "") -> WeightedModel:
    """Parse a model file: a JSON object or ``step: weight`` / ``step = weight`` lines.

    Blank lines and ``#`` comments are ignored.
    """
    stripped = text.strip()
    weights: dict[tuple[int, int], Fraction] = {}
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ModelParseError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from None
        if not isinstance(obj, dict):
            raise ModelParseError("JSON model must be an object")
        for k, v in obj.items():
            step = parse_step(k)
            if step in weights:
                raise ModelParseError(f"duplicate step {k!r}")
            weights[step] = parse_weight(str(v))
    else:
        for lineno, raw in enumerate(text.splitlines(), 1):
            body = raw.split("#", 1)[0]
            if not body.strip():
                continue
            m = re.match(r"^(\s*)([^:=]+?)\s*[:=]\s*(.*)$", body)
            if not m:
                raise ModelParseError("expected 'step: weight'", lineno, 1)
            key, val = m.group(2), m.group(3)
            step = parse_step(key, lineno, len(m.group(1)) + 1)
            if step in weights:
                raise ModelParseError(f"duplicate step {key.strip()!r}", lineno, len(m.group(1)) + 1)
            weights[step] = parse_weight(val, lineno, body.index(val, m.end(2)) + 1 if val else len(body))
    try:
        return WeightedModel(weights, include_origin=include_origin, name=name, nonnegative=nonnegative)
    except ModelError as e:
        raise ModelParseError(str(e)) from None


def load_model(path, **kw) -> WeightedModel:
    from pathlib import Path

    p = Path(path)
    return parse_model_text(p.read_text(), name=kw.pop("name", p.stem), **kw)


# ---------------------------------------------------------------------------
# Named step sets

NAMED_STEP_SETS: dict[str, tuple[tuple[int, int], ...]] = {
    "IIB.1": ((0, 1), (1, 0), (-1, -1), (0, -1)),
    "IIB.2": ((0, 1), (1, 0), (-1, -1), (1, -1)),
    "IIC.1": ((0, 1), (1, 1), (-1, 0), (0, -1)),
    "IIB.3": ((0, 1), (-1, 0), (1, 0), (1, -1)),
    "IIC.4": ((0, 1), (1, 1), (-1, 0), (1, 0), (-1, -1)),
    "IIC.2": ((0, 1), (1, 1), (-1, 0), (-1, -1), (0, -1)),
    "IIB.6": ((0, 1), (1, 0), (-1, -1), (0, -1), (1, -1)),
    "IIC.5": ((0, 1), (1, 1), (-1, 0), (1, 0), (0, -1)),
    "IIB.7": ((-1, 1), (0, 1), (1, 0), (0, -1), (1, -1)),
    "wIIC.2": ((0, 1), (1, 1), (-1, 0), (-1, -1), (0, -1), (0, 0)),
    "IB.6": ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, 1)),
    "GB": ((-1, 0), (1, 0), (-1, 1), (1, -1)),
    "simple": ((0, 1), (0, -1), (1, 0), (-1, 0)),
}

# Infinite-group step sets with a decoupling pair (unweighted).
DECOUPLED_UNWEIGHTED = ("IIB.1", "IIB.2", "IIC.1", "IIB.3", "IIC.4", "IIC.2", "IIB.6", "IIC.5", "IIB.7")
# Step sets whose weighted versions always admit a certificate.
ALWAYS_CERTIFIED = ("IIB.1", "IIB.2", "IIB.6")


def named_model(name: str, weights: Mapping | None = None, **kw) -> WeightedModel:
    steps = NAMED_STEP_SETS[name]
    w = {s: 1 for s in steps}
    if weights:
        for s, v in weights.items():
            s = STEP_NAMES[s] if isinstance(s, str) else tuple(s)
            if s not in w:
                raise ModelError(f"step {s} not in step set {name}")
            w[s] = v
    return WeightedModel(w, name=name, **kw)


def unweighted_step_sets() -> dict[str, list[list[tuple[int, int]]]]:
    """Genus-zero and genus-one unweighted step set lists shipped as package data."""
    from importlib import resources

    raw = json.loads(resources.files("quadwalk").joinpath("data/unweighted_step_sets.json").read_text())
    return {k: [[tuple(s) for s in ss] for ss in v] for k, v in raw.items()}

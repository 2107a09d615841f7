"""Decide whether a weighted quadrant walk has a differentially algebraic generating series."""

from .decider import DecideOptions, Verdict, VerdictTag, decide
from .kernel import build_kernel, classify_curve
from .model import WeightedModel, load_model, named_model, parse_model_text

__all__ = [
    "DecideOptions",
    "Verdict",
    "VerdictTag",
    "WeightedModel",
    "build_kernel",
    "classify_curve",
    "decide",
    "load_model",
    "named_model",
    "parse_model_text",
]

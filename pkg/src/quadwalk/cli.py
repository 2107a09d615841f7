"""Command-line front end.

Exit codes: 0 when a verdict or result was produced, 2 on a structured abort
of the pipeline, 1 on I/O or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .decider import DecideOptions, VerdictTag, decide
from .expr import ExprError, parse_function
from .families import FAMILIES
from .function_field import (
    CertificateMembershipError,
    certificate_to_pair,
    function_field,
    tau_order,
    verify_certificate,
)
from .heights import (
    FiberMismatchError,
    KodairaError,
    delta_multiplicity_profile,
    fiber_components_from_base_points,
    kodaira_type_at_zero,
    weierstrass_valuations,
)
from .kernel import CurveClass, base_points, build_kernel, classify_curve, special_points
from .model import ModelParseError, load_model
from .points import DegenerateFiberError, same_orbit
from .report import RunReport
from .walks import count_walks

EXIT_OK, EXIT_IO, EXIT_ABORT = 0, 1, 2

ABORTS = (KodairaError, FiberMismatchError, DegenerateFiberError, CertificateMembershipError)


class Abort(Exception):
    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(message)


def _fmt_vals(v) -> str:
    return "(" + ", ".join("inf" if x == float("inf") else str(int(x)) for x in v.as_tuple()) + ")"


def _run(report: RunReport, fn) -> int:
    """Run fn(report); map exceptions to exit codes recorded in the report."""
    try:
        fn(report)
        return EXIT_OK
    except ModelParseError as e:
        report.stage, report.error = "parse", str(e)
        return EXIT_IO
    except ExprError as e:
        report.stage, report.error = "expression", str(e)
        return EXIT_IO
    except OSError as e:
        report.stage, report.error = "io", f"{e.strerror or e}: {e.filename}"
        return EXIT_IO
    except Abort as e:
        report.stage, report.error = e.stage, str(e)
        return EXIT_ABORT
    except ABORTS as e:
        report.stage = report.stage or "pipeline"
        report.error = f"{type(e).__name__}: {e}"
        return EXIT_ABORT


def _load(report: RunReport, path: str):
    report.source = str(path)
    report.stage = "parse"
    m = load_model(path)
    report.model = m.describe()
    report.stage = None
    return m


def _genus_one_kernel(report: RunReport, m):
    k = build_kernel(m)
    cls = classify_curve(k)
    report.curve_class = cls.tag.value
    if cls.tag is not CurveClass.GENUS_ONE:
        raise Abort("classify", f"curve is {cls.tag.value} ({cls.reason}); command needs a genus-one curve")
    return k


# ---------------------------------------------------------------------------
# subcommands


def classify_report(path: str, window: int = 25, timing: bool = False) -> tuple[RunReport, int]:
    report = RunReport("classify")

    def body(r: RunReport):
        m = _load(r, path)
        t0 = time.perf_counter()
        r.stage = "decide"
        v = decide(m, DecideOptions(window=window))
        r.stage = None
        d = v.diagnostics
        r.curve_class = d.get("curve_class")
        if "tau_order" in d:
            r.tau_order = str(d["tau_order"])
        r.fixed_points = d.get("fixed_points")
        if "valuations" in d:
            r.valuations = "(" + ", ".join("inf" if x == float("inf") else str(int(x)) for x in d["valuations"]) + ")"
        r.fiber_type = d.get("fiber_type")
        r.candidate_heights = list(d.get("candidate_heights", []))
        r.candidate_multipliers = [str(n) for n in d.get("candidate_multipliers", [])]
        r.pairings = list(d.get("pairings", []))
        if v.witness is not None:
            r.witness = f"n={v.witness.n} from={v.witness.source} to={v.witness.target}"
        r.marker = v.marker
        r.verdict = v.tag.value
        r.reason = v.reason
        if timing:
            r.elapsed = f"{time.perf_counter() - t0:.3f}s"

    code = _run(report, body)
    return report, code


def _classify_one(args):
    path, window, timing = args
    return classify_report(path, window, timing)


def cmd_classify(ns) -> tuple[list[RunReport], int]:
    if ns.dir:
        d = Path(ns.dir)
        if not d.is_dir():
            r = RunReport("classify", source=str(d), stage="io", error=f"not a directory: {d}")
            return [r], EXIT_IO
        paths = sorted(str(p) for p in d.iterdir() if p.is_file() and not p.name.startswith("."))
        jobs = [(p, ns.window, ns.timing) for p in paths]
        if ns.workers and ns.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=ns.workers) as ex:
                results = list(ex.map(_classify_one, jobs))
        else:
            results = [_classify_one(j) for j in jobs]
        reports = [r for r, _ in results]
        codes = [c for _, c in results]
        code = EXIT_IO if EXIT_IO in codes else (EXIT_ABORT if EXIT_ABORT in codes else EXIT_OK)
        return reports, code
    if not ns.path:
        r = RunReport("classify", stage="args", error="give a model file or --dir")
        return [r], EXIT_IO
    r, code = classify_report(ns.path, ns.window, ns.timing)
    return [r], code


def cmd_fiber(ns):
    def body(r: RunReport):
        m = _load(r, ns.path)
        k = _genus_one_kernel(r, m)
        r.stage = "fiber"
        v = weierstrass_valuations(k)
        r.valuations = _fmt_vals(v)
        kt = kodaira_type_at_zero(v)
        r.fiber_type = str(kt)
        bp = base_points(k)
        r.base_point_components = str(fiber_components_from_base_points(bp))
        prof = delta_multiplicity_profile(k)
        r.delta_profile = f"ord0={prof.ord_zero} multiplicities={list(prof.multiset)} repeated_nonzero={prof.has_repeated_nonzero_root}"
        r.stage = None
        r.result = str(kt)

    r = RunReport("fiber")
    return [r], _run(r, body)


def _resolve_point(sp, name: str):
    table = {"P0": sp.P0, "P1": sp.P1, "Q0": sp.Q0, "Q1": sp.Q1, "iota1_Q0": sp.iota1_Q0, "iota1_Q1": sp.iota1_Q1}
    if name not in table:
        raise Abort("args", f"unknown point {name!r}; choose from {', '.join(table)}")
    return table[name]


def cmd_orbit(ns):
    def body(r: RunReport):
        m = _load(r, ns.path)
        k = _genus_one_kernel(r, m)
        r.stage = "orbit"
        sp = special_points(k)
        src, dst = _resolve_point(sp, ns.source), _resolve_point(sp, ns.target)
        cands = [n for n in range(-ns.nmax, ns.nmax + 1) if n != 0]
        w = same_orbit(k, src, dst, cands)
        r.stage = None
        if w is None:
            r.result = f"no n with 1 <= |n| <= {ns.nmax} maps {ns.source} to {ns.target}"
        else:
            r.witness = f"n={w.n} from={w.source} to={w.target}"
            r.result = f"tau^{w.n}({ns.source}) = {ns.target}"

    r = RunReport("orbit")
    return [r], _run(r, body)


def cmd_tau_order(ns):
    def body(r: RunReport):
        m = _load(r, ns.path)
        k = _genus_one_kernel(r, m)
        o = tau_order(k, ns.max)
        r.tau_order = str(o) if o is not None else "infinite"
        r.result = r.tau_order

    r = RunReport("tau-order")
    return [r], _run(r, body)


def cmd_series(ns):
    def body(r: RunReport):
        m = _load(r, ns.path)
        if ns.order < 0:
            raise Abort("args", "--order must be nonnegative")
        t = count_walks(m, ns.order)
        r.rows = [f"{n} {i} {j} {v}" for n, i, j, v in t.rows()]

    r = RunReport("series")
    return [r], _run(r, body)


def cmd_check_certificate(ns):
    def body(r: RunReport):
        m = _load(r, ns.path)
        k = _genus_one_kernel(r, m)
        ff = function_field(k)
        r.stage = "expression"
        g = parse_function(ns.g, ff)
        r.stage = "certificate"
        ok = verify_certificate(k, g)
        r.result = "certificate" if ok else "not a certificate"
        if ok:
            f, _ = certificate_to_pair(k, g)
            r.reason = f"decoupling pair f = xy - g verified; f = {f.u}"
        r.stage = None

    r = RunReport("check-certificate")
    return [r], _run(r, body)


def cmd_check_condition(ns):
    fam = FAMILIES[ns.family]
    rng = random.Random(ns.seed)
    reports = []
    mismatches = 0
    for trial in range(ns.trials):
        for on in (True, False):
            m = fam.sample(rng, on)
            r = RunReport("check-condition", model=m.describe())
            v = decide(m)
            expected = fam.tag_on if on else fam.tag_off
            r.verdict = v.tag.value
            if v.witness is not None:
                r.witness = f"n={v.witness.n}"
            r.marker = v.marker
            ok = v.tag is expected
            mismatches += not ok
            r.result = f"condition={'holds' if on else 'fails'} expected={expected.value} {'agree' if ok else 'DISAGREE'}"
            reports.append(r)
    summary = RunReport("check-condition", result=f"{2 * ns.trials - mismatches}/{2 * ns.trials} agree", verdict="agree" if not mismatches else "disagree")
    reports.append(summary)
    return reports, EXIT_OK if not mismatches else EXIT_ABORT


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors count as parse errors (exit 1), not pipeline aborts."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quadwalk", description="Decide differential algebraicity of weighted quadrant walks.")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="full verdict for a model file or a directory of them")
    c.add_argument("path", nargs="?")
    c.add_argument("--dir")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--window", type=int, default=25, help="brute-force orbit window |n| <= W")
    c.add_argument("--timing", action="store_true", help="include elapsed time (makes output nondeterministic)")
    c.set_defaults(func=cmd_classify)

    f = sub.add_parser("fiber", help="valuations and Kodaira type at t = 0")
    f.add_argument("path")
    f.set_defaults(func=cmd_fiber)

    o = sub.add_parser("orbit", help="search tau^n(SOURCE) = TARGET")
    o.add_argument("path")
    o.add_argument("--from", dest="source", default="P0")
    o.add_argument("--to", dest="target", default="Q0")
    o.add_argument("--nmax", type=int, default=25)
    o.set_defaults(func=cmd_orbit)

    t = sub.add_parser("tau-order", help="order of tau up to --max")
    t.add_argument("path")
    t.add_argument("--max", type=int, default=6)
    t.set_defaults(func=cmd_tau_order)

    s = sub.add_parser("series", help="weighted walk counts as rows 'n i j value'")
    s.add_argument("path")
    s.add_argument("--order", type=int, default=12)
    s.set_defaults(func=cmd_series)

    g = sub.add_parser("check-certificate", help="verify that G is a certificate")
    g.add_argument("path")
    g.add_argument("--g", required=True)
    g.set_defaults(func=cmd_check_certificate)

    k = sub.add_parser("check-condition", help="sample a family on and off its condition")
    k.add_argument("--family", choices=sorted(FAMILIES), required=True)
    k.add_argument("--trials", type=int, default=5)
    k.add_argument("--seed", type=int, default=0)
    k.set_defaults(func=cmd_check_condition)
    return p


def emit(reports: list[RunReport], fmt: str, out) -> None:
    if fmt == "structured":
        objs = [r.to_structured() for r in reports]
        out.write(json.dumps(objs[0] if len(objs) == 1 else objs, indent=2) + "\n")
        return
    for i, r in enumerate(reports):
        if i:
            out.write("\n")
        if r.command == "series" and r.rows and r.error is None:
            out.write("".join(row + "\n" for row in r.rows))
        else:
            out.write(r.to_text())


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    reports, code = ns.func(ns)
    emit(reports, ns.format, sys.stdout)
    if code != EXIT_OK:
        for r in reports:
            if r.error:
                print(f"error [{r.stage}]: {r.error}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

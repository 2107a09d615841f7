import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadwalk.cli import EXIT_ABORT, EXIT_IO, EXIT_OK, main
from quadwalk.report import RunReport

MODELS = Path(__file__).resolve().parent.parent / "models"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def parse(out):
    return RunReport.from_text(out)


def test_classify_wiic2(capsys):
    code, out, _ = run(capsys, "classify", MODELS / "wiic2_ones.txt")
    r = parse(out)
    assert code == EXIT_OK
    assert r.verdict == "DecoupledDAlgebraic"
    assert r.witness.startswith("n=-1 ")
    assert r.fiber_type == "I7"


def test_classify_gb_unequal(capsys):
    code, out, _ = run(capsys, "classify", MODELS / "gb_unequal.txt")
    r = parse(out)
    assert code == EXIT_OK and r.verdict == "NotDecoupledDTranscendental"
    assert "fixed" in r.reason


def test_classify_malformed(capsys):
    code, out, err = run(capsys, "classify", MODELS / "malformed.txt")
    assert code == EXIT_IO
    assert "line 3, column 5" in err
    assert parse(out).stage == "parse"


def test_missing_file(capsys):
    code, _, err = run(capsys, "classify", MODELS / "nope.txt")
    assert code == EXIT_IO and "io" in err


def test_usage_error_is_exit_1(capsys):
    with pytest.raises(SystemExit) as e:
        main(["orbit"])
    assert e.value.code == EXIT_IO
    capsys.readouterr()


def test_classify_directory(capsys):
    code, out, _ = run(capsys, "classify", "--dir", MODELS, "--workers", 2)
    assert code == EXIT_IO  # the malformed fixture is in the corpus
    blocks = [RunReport.from_text(b) for b in out.strip().split("\n\n")]
    assert len(blocks) == len(list(MODELS.iterdir()))
    by_name = {Path(b.source).name: b for b in blocks}
    assert by_name["simple.json"].verdict == "FiniteGroupDFinite"
    assert by_name["gb_equal.txt"].tau_order == "4"


def test_fiber(capsys):
    code, out, _ = run(capsys, "fiber", MODELS / "wiic2_ones.txt")
    r = parse(out)
    assert code == EXIT_OK
    assert r.valuations == "(0, 0, 7)" and r.fiber_type == "I7" and r.base_point_components == "7"


def test_fiber_gb_profiles(capsys):
    _, out, _ = run(capsys, "fiber", MODELS / "gb_equal.txt")
    assert "repeated_nonzero=True" in parse(out).delta_profile
    _, out, _ = run(capsys, "fiber", MODELS / "gb_unequal.txt")
    assert "repeated_nonzero=False" in parse(out).delta_profile


def test_fiber_on_genus_zero_aborts(capsys):
    code, _, err = run(capsys, "fiber", MODELS / "genus_zero.txt")
    assert code == EXIT_ABORT and "[classify]" in err


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", MODELS / "wiic2_ones.txt", "--from", "P0", "--to", "Q0", "--nmax", 4)
    assert code == EXIT_OK and parse(out).witness.startswith("n=-1")
    code, out, _ = run(capsys, "orbit", MODELS / "ib6_ones.txt", "--nmax", 4)
    assert code == EXIT_OK and parse(out).witness is None
    code, _, _ = run(capsys, "orbit", MODELS / "ib6_ones.txt", "--to", "R7")
    assert code == EXIT_ABORT


def test_tau_order(capsys):
    assert parse(run(capsys, "tau-order", MODELS / "simple.json")[1]).tau_order == "2"
    assert parse(run(capsys, "tau-order", MODELS / "wiic2_ones.txt")[1]).tau_order == "infinite"


def test_series(capsys):
    code, out, _ = run(capsys, "series", MODELS / "simple.json", "--order", 2)
    assert code == EXIT_OK
    rows = out.strip().splitlines()
    assert rows[0] == "0 0 0 1"
    assert "2 0 0 2" in rows
    assert all(len(r.split()) == 4 for r in rows)


def test_check_certificate(capsys):
    code, out, _ = run(capsys, "check-certificate", MODELS / "wiic2_ones.txt", "--g=-1/y")
    assert code == EXIT_OK and parse(out).result == "certificate"
    code, out, _ = run(capsys, "check-certificate", MODELS / "wiic2_ones.txt", "--g", "x")
    assert code == EXIT_OK and parse(out).result == "not a certificate"
    code, _, err = run(capsys, "check-certificate", MODELS / "wiic2_ones.txt", "--g", "1/(y")
    assert code == EXIT_IO and "[expression]" in err


def test_check_condition(capsys):
    code, out, _ = run(capsys, "check-condition", "--family", "wIIC2", "--trials", 2, "--seed", 3)
    assert code == EXIT_OK
    assert out.strip().splitlines()[-1] == "verdict: agree"


def test_structured_format(capsys):
    code, out, _ = run(capsys, "--format", "structured", "classify", MODELS / "wiic2_ones.txt")
    obj = json.loads(out)
    assert code == EXIT_OK and obj["verdict"] == "DecoupledDAlgebraic"
    assert RunReport.from_structured(obj).to_structured() == obj


def test_deterministic_output(capsys):
    a = run(capsys, "classify", MODELS / "ib6_ones.txt")[1]
    b = run(capsys, "classify", MODELS / "ib6_ones.txt")[1]
    assert a == b


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "quadwalk", "tau-order", str(MODELS / "gb_equal.txt")],
        capture_output=True, text=True, check=False,
    )
    assert p.returncode == 0 and "tau_order: 4" in p.stdout


text_values = st.text(alphabet="abcxyz0123456789/=-_ ()", min_size=1, max_size=12).filter(
    lambda s: s.strip() == s and " | " not in s
)


@given(st.builds(RunReport, command=st.just("classify"), model=text_values, verdict=text_values,
                 pairings=st.lists(text_values, max_size=3)))
def test_report_round_trip(r):
    assert RunReport.from_text(r.to_text()) == r
    assert RunReport.from_structured(json.loads(r.to_json())) == r

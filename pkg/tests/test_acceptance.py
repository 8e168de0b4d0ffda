"""
Acceptance criteria 1-8, each at its stated tolerance (exact counts and
exact or 20-sample modular identities).  Each test records one PASS/FAIL
line, printed in the "acceptance criteria" section of the pytest summary.

Criterion 1 contains a clause ("every prec pair has c = q^-1 - q^-2") that
the computed table and the transcribed reference listing both contradict on
two pairs.  It is checked faithfully in its own strict-xfail test, and the
criterion line reports FAIL.
"""

import time
import warnings

import pytest

from casselman import QPoly, build_root_system, kl_table
from casselman.modular import ModCtx
from casselman.reproduce import FIGURE1_LISTING, a3_adtable, figure1
from casselman.scans import (
    descent_conjecture_scan,
    pole_clearance_check,
    poles_scan,
    product_formula_scan,
)
from casselman.suites import run_suite

from conftest import el

SAMPLES = 20
STD = QPoly({-1: 1, -2: -1})


def group(t, n):
    return build_root_system(t, n).weyl_group


# 1. nonzero c on A4 ---------------------------------------------------------


def _prec_pairs():
    g = group("A", 4)
    kl = kl_table(g)
    return g, kl, [(u, v) for u, v in kl.nonzero_c_pairs() if kl.precedes(u, v)]


def test_criterion_1(acceptance, A4):
    t0 = time.perf_counter()
    rep = figure1()
    g, kl, prec = _prec_pairs()
    elapsed = time.perf_counter() - t0
    spot = {
        ("32", "342312"): QPoly({-1: 1, -3: -1}),
        ("42", "234312"): QPoly({-1: -1, -3: 1}),
    }
    spot_ok = all(kl.c_poly(el(A4, u).index, el(A4, v).index) == c for (u, v), c in spot.items())
    nonstd = [(g.format(u), g.format(v), str(kl.c_poly(u, v)))
              for u, v in prec if kl.c_poly(u, v) != STD]
    clauses = {
        "46 nonzero pairs": rep.counts["nonzero_pairs"] == 46,
        "38 prec": rep.counts["prec_marked"] == 38 == len(prec),
        "spot rows": spot_ok,
        "runtime <= 10 min": elapsed <= 600,
    }
    regular = not nonstd
    detail = ", ".join(f"{k}: {'ok' if v else 'NO'}" for k, v in clauses.items())
    detail += f", every prec pair c = q^-1 - q^-2: {'ok' if regular else 'NO'}"
    if not regular:
        detail += f" ({len(prec) - len(nonstd)}/{len(prec)}; exceptions {nonstd})"
    acceptance("1", all(clauses.values()) and regular, f"[{elapsed:.1f}s] {detail}")
    assert all(clauses.values()), clauses


def test_criterion_1_reference_listing_agrees():
    # the two exceptions are in the reference listing too, marked prec
    irregular = {(u, v) for u, v, c, prec in FIGURE1_LISTING if prec and QPoly(c) != STD}
    assert irregular == {("232", "23412312"), ("41", "1234321")}


@pytest.mark.xfail(strict=True, reason="two prec pairs of A4 have c = q^-2 - q^-3; "
                   "the reference listing shows the same values (ledgered)")
def test_criterion_1_every_prec_pair_standard():
    _, kl, prec = _prec_pairs()
    assert all(kl.c_poly(u, v) == STD for u, v in prec)


# 2. A3 AD-recursion failures ------------------------------------------------


def test_criterion_2(acceptance):
    t0 = time.perf_counter()
    rep = a3_adtable()
    elapsed = time.perf_counter() - t0
    ok = rep.counts["failures"] == 8 and rep.counts["reference_match"] and elapsed <= 60
    acceptance("2", ok, f"[{elapsed:.1f}s] failures={rep.counts['failures']} "
                        f"reference_match={rep.counts['reference_match']}")
    assert ok


# 3. descent conjecture on A5 and D4 -----------------------------------------


def test_criterion_3(acceptance):
    t0 = time.perf_counter()
    a5 = descent_conjecture_scan(group("A", 5))
    d4 = descent_conjecture_scan(group("D", 4))
    elapsed = time.perf_counter() - t0
    ok = (a5.counts["failing"] == 1346 and a5.counts["failing_with_Q1"] == 0
          and all(r["witnesses"]["Q"] != "1" for r in a5.rows)
          and d4.counts["failing_with_Q1"] == 0 and elapsed <= 1800)
    acceptance("3", ok, f"[{elapsed:.1f}s] A5 failing={a5.counts['failing']} "
                        f"with Q=1: {a5.counts['failing_with_Q1']}; "
                        f"D4 failing with Q=1: {d4.counts['failing_with_Q1']}")
    assert ok


# 4. identity suites ---------------------------------------------------------

SYMBOLIC_SUITES = ("fe-q1", "full-inversion", "duality", "transforms", "limits")
MODULAR_SUITES = ("fe-q1", "full-inversion", "duality", "transforms")


def test_criterion_4(acceptance):
    t0 = time.perf_counter()
    bad = []
    for t, n in (("A", 2), ("A", 3), ("B", 2)):
        for suite in SYMBOLIC_SUITES:
            rep = run_suite(group(t, n), suite)
            if not rep.passed:
                bad.append((f"{t}{n}", suite, rep.counts["failures"]))
    for suite in MODULAR_SUITES:
        rep = run_suite(group("A", 4), suite, "modular", ModCtx(samples=SAMPLES))
        if not rep.passed or rep.counts["samples"] != SAMPLES:
            bad.append(("A4", suite, rep.counts["failures"]))
    elapsed = time.perf_counter() - t0
    acceptance("4", not bad, f"[{elapsed:.1f}s] symbolic A2/A3/B2 x {len(SYMBOLIC_SUITES)} suites, "
                             f"modular A4 x {len(MODULAR_SUITES)} suites ({SAMPLES} samples); "
                             f"failures: {bad or 'none'}")
    assert not bad


# 5. Hecke oracle -------------------------------------------------------------


def test_criterion_5(acceptance):
    t0 = time.perf_counter()
    reps = [run_suite(group("A", 2), "oracle"), run_suite(group("B", 2), "oracle"),
            run_suite(group("A", 3), "oracle", "modular", ModCtx(samples=SAMPLES))]
    elapsed = time.perf_counter() - t0
    mism = sum(r.counts["failures"] for r in reps)
    ok = mism == 0 and elapsed <= 300
    acceptance("5", ok, f"[{elapsed:.1f}s] A2, B2 exact; A3 modular ({SAMPLES} samples); "
                        f"mismatches={mism}")
    assert ok


# 6. Hecke lemmas -------------------------------------------------------------


def test_criterion_6(acceptance):
    t0 = time.perf_counter()
    reps = [run_suite(group("A", 2), "hecke-lemmas"), run_suite(group("B", 2), "hecke-lemmas")]
    elapsed = time.perf_counter() - t0
    fails = [row for r in reps for row in r.rows]
    acceptance("6", not fails, f"[{elapsed:.1f}s] A2, B2 exact; failures={len(fails)}")
    assert not fails


# 7. conjecture scans, consistency meta-test ----------------------------------


def test_criterion_7(acceptance, A2):
    t0 = time.perf_counter()
    poles = [poles_scan(group("A", n)).counts["violations"] for n in (2, 3)]
    example = pole_clearance_check(el(A2, "1"), el(A2, "121"))
    pf = [product_formula_scan(group("A", 2)), product_formula_scan(group("A", 3)),
          product_formula_scan(group("A", 4), "modular", ModCtx(samples=SAMPLES))]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        b2 = product_formula_scan(group("B", 2))
    elapsed = time.perf_counter() - t0
    q1 = [r.counts["Q1_violations"] for r in pf]
    ok = poles == [0, 0] and example and q1 == [0, 0, 0] and b2.counts["Q1_violations"] >= 1
    acceptance("7", ok, f"[{elapsed:.1f}s] pole violations A2/A3={poles}, example pair clear={example}; "
                        f"Q=1 product violations A2/A3/A4={q1}; "
                        f"B2 Q=1 violations={b2.counts['Q1_violations']}")
    assert ok


# 8. Moebius function ---------------------------------------------------------


def test_criterion_8(acceptance):
    reps = {f"{t}{n}": run_suite(group(t, n), "mobius") for t, n in (("A", 2), ("A", 3), ("B", 2))}
    ok = all(r.passed for r in reps.values())
    acceptance("8", ok, "zeta inverse = (-1)^(l(v)-l(u)) on " + ", ".join(
        f"{k}: {'ok' if r.passed else 'NO'}" for k, r in reps.items()))
    assert ok

"""The eight acceptance criteria, each at tolerance zero with its runtime cap.

Every test prints one ``criterion N ... PASS|FAIL`` line to the terminal.
"""
import time
from collections import Counter
from pathlib import Path

import pytest

from linsets.cyclic_model import check_thm_final, decompose
from linsets.directions import all_additive_tables, direction_trichotomy, function_tower
from linsets.duality import check_pesi, dual_subspace
from linsets.examples_bounds import (
    check_example_new, check_size_bounds, example_new, remark_example, theta_identity,
)
from linsets.field_tower import make_tower
from linsets.fq_linalg import all_subspaces
from linsets.harness import load_config, run_sweep
from linsets.linset_core import field_of_linearity_by_closure, linear_set

CONFIGS = Path(__file__).resolve().parents[1] / "configs"
CYCLIC = ("cyclic_inclusion", "cyclic_projection", "thm_final")


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, seconds, limit, note=""):
        ok = ok and seconds < limit
        line = f"criterion {number} {title}: {'PASS' if ok else 'FAIL'} ({seconds:.1f} s of {limit} s)"
        with capsys.disabled():
            print(f"\n{line}{'  ' + note if note else ''}")
        return ok
    return emit


def _sweep(name, **overrides):
    return run_sweep(load_config(CONFIGS / name, **overrides))


def test_criterion_1_mass_formula(report):
    t0 = time.perf_counter()
    bad, total = 0, 0
    for n in (1, 2, 3):
        T = make_tower(2, 1, n)
        for r in range(2, 6 // n + 1):
            for m in range(r * n + 1):
                for U in all_subspaces(T, r, m):
                    total += 1
                    bad += linear_set(U).mass() != 2**m - 1
    ok = report(1, "mass formula", bad == 0, time.perf_counter() - t0, 60,
                f"{total} subspaces, {bad} mismatches")
    assert ok


def test_criterion_2_thm_main1(report):
    t0 = time.perf_counter()
    reps = [_sweep("thm_main1_q2.ini"), _sweep("thm_main1_q3.ini")]
    fails = sum(r.failures for r in reps)
    passes = sum(r.checks["thm_main1"].get("pass", 0) for r in reps)
    cases = [sum(r.checks["thm_main1"].get(k, 0) for k in ("pass", "fail", "vacuous")) for r in reps]
    # 35 + 1395 rank-n cases at q = 2, 130 at q = 3
    ok = fails == 0 and cases == [35 + 1395, 130] and passes > 0
    assert report(2, "weight forces linearity", ok, time.perf_counter() - t0, 120,
                  f"{sum(cases)} cases, {passes} non-vacuous, {fails} failures")


def test_criterion_3_thm_main(report):
    t0 = time.perf_counter()
    lines = _sweep("lines_q3.ini", checks=("thm_main",))
    planes = _sweep("planes_q4.ini", checks=("thm_main",))
    fails = lines.failures + planes.failures
    passes = lines.checks["thm_main"]["pass"] + planes.checks["thm_main"]["pass"]
    ok = fails == 0 and planes.cases == 1000 and passes > 0
    assert report(3, "L_U = L_<U>_{q^d}", ok, time.perf_counter() - t0, 300,
                  f"{lines.cases}+{planes.cases} cases, {passes} non-vacuous, {fails} failures")


def test_criterion_4_duality(report):
    t0 = time.perf_counter()
    T = make_tower(2, 1, 2)
    subs = [U for m in range(5) for U in all_subspaces(T, 2, m)]
    Rs = [R for s in range(3) for R in all_subspaces(T, 2, s, e=2)]
    bad = 0
    for U in subs:
        D = dual_subspace(U)
        bad += D.fq_dim != 4 - U.fq_dim
        bad += dual_subspace(D) != U
        bad += sum(check_pesi(U, R).status != "pass" for R in Rs)
    rep = _sweep("duality_q2.ini")
    ok = bad == 0 and rep.failures == 0 and len(subs) == 67 and len(Rs) == 7
    assert report(4, "duality", ok, time.perf_counter() - t0, 60,
                  f"{len(subs)} x {len(Rs)} pairs, {bad + rep.failures} mismatches")


def test_criterion_5_trichotomy(report):
    t0 = time.perf_counter()
    cases, bad, ident = Counter(), 0, []
    for p, h in ((2, 2), (2, 3), (3, 2)):
        T = function_tower(p, h)
        for table in all_additive_tables(T):
            res = direction_trichotomy(T, table)
            cases[res.case] += 1
            bad += res.status != "pass"
        res = direction_trichotomy(T, list(range(T.order)))
        ident.append((res.N, res.s) == (1, T.order))
    ok = bad == 0 and all(ident) and sum(cases.values()) == 16 + 512 + 81
    assert report(5, "direction trichotomy", ok, time.perf_counter() - t0, 60,
                  f"{dict(sorted(cases.items()))}, identity (1, Q): {all(ident)}")


def test_criterion_6_cyclic_model(report):
    t0 = time.perf_counter()
    lines = _sweep("lines_q3.ini", checks=CYCLIC)
    planes = _sweep("planes_q4.ini", checks=CYCLIC)
    fails = lines.failures + planes.failures
    under_hyp = lines.checks["thm_final"]["pass"] + planes.checks["thm_final"]["pass"]
    literal = lines.thm_final_literal_fails + planes.thm_final_literal_fails
    U = remark_example(2)
    dec = decompose(U)
    S = dec.state
    remark = (dec.d == 3 and S.sigma_subspace(dec.Ui[0], 3) == dec.Ui[0]
              and S.sigma_subspace(dec.Ui[0], 1) != dec.Ui[0])
    final7 = check_thm_final(remark_example(7)).status == "pass"
    ok = fails == 0 and remark and final7 and under_hyp > 0
    assert report(6, "cyclic model", ok, time.perf_counter() - t0, 300,
                  f"{fails} failures, {under_hyp} cases with all weights >= 2, remark d = {dec.d}; "
                  f"weight-1 cases where the equality fails anyway: {literal}")


def test_criterion_7_example_new(report):
    t0 = time.perf_counter()
    ex = example_new(7, 1, seed=0)
    res = check_example_new(ex)
    d = res.details
    ok = (res.status == "pass" and ex.U.fq_dim == 6 and d["size"] == 17151
          and d["off_line_weight_1"] and d["no_subline_secant"] and d["field_of_linearity"] == 1)
    assert report(7, "example at (q, k) = (7, 1)", ok, time.perf_counter() - t0, 600,
                  f"|L_U| = {d['size']}, secant sizes {d['secant_sizes']}")


def test_criterion_8_theta_identity(report):
    t0 = time.perf_counter()
    T = make_tower(2, 1, 2)
    cases = pivots = bad = 0
    for U in all_subspaces(T, 3, 3):
        ones = [P for P, w in linear_set(U).weights.items() if w == 1]
        cases += bool(ones)
        for P in ones:
            lhs, rhs = theta_identity(U, P)
            pivots += 1
            bad += lhs != rhs
        if ones:
            bad += check_size_bounds(U).details.get("identity") is not True
    tight = []
    for U in all_subspaces(T, 2, 2):
        L = linear_set(U)
        if len(L) == 2 + 1 and field_of_linearity_by_closure(U, L).degree == 1:
            tight.append(U)
    ok = bad == 0 and cases == 1395 and len(tight) > 0
    assert report(8, "counting identity", ok, time.perf_counter() - t0, 120,
                  f"{cases} cases, {pivots} pivots, {bad} mismatches; {len(tight)} minimum-size lines")

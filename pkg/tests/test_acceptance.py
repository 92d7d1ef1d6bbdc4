"""Acceptance gate: one test per criterion, exact tolerances, timed.

Run with `pytest tests/test_acceptance.py -v -s` to see one pass/fail
line per criterion.
"""

import time
from fractions import Fraction

import pytest

from gw_euler.enumerative import (euler_lines, euler_o_n, euler_o_n_stacky,
                                  reference_lines_config, stacky_lines_class,
                                  stacky_report)
from gw_euler.errors import CharTwo, NonIsolatedZeros
from gw_euler.fields import QQ, PrimeField, make_extension
from gw_euler.fp_verifier import (PlaneConfig, draw_plane_config,
                                  examine_config, splitmix64,
                                  verify_lines_class)
from gw_euler.gw import GWClass, gw_equal, gw_invariants, hyperbolic_split
from gw_euler.polys import parse_system
from gw_euler.quadform import gram_to_class, trace_form
from gw_euler.scheja_storch import ss_class

from conftest import (suite_hilbert_symbol, suite_hyperbolic_recognition,
                      suite_jacobian_oracle, suite_presentation_independence,
                      suite_row_operation_covariance,
                      suite_trace_form_nondegenerate)


def _report(number, ok, message):
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {message}")
    assert ok, f"criterion {number}: {message}"


def test_criterion_1_global_degree_example():
    start = time.monotonic()
    cls = ss_class(parse_system("x^2-1;y^2-x^2;z^2+x^2", QQ))
    elapsed = time.monotonic() - start
    ok = gw_equal(cls, GWClass.hyperbolic(QQ, 4)) and cls == \
        GWClass.hyperbolic(QQ, 4) and elapsed < 1.0
    _report(1, ok, f"ss_class(x^2-1, y^2-x^2, z^2+x^2) = {cls.render()} "
                   f"in {elapsed:.3f}s")


def test_criterion_2_even_euler_numbers():
    results = []
    for n in (2, 4, 6):
        start = time.monotonic()
        cls = euler_o_n(n, 1, "scharlau")
        elapsed = time.monotonic() - start
        exact = gw_equal(cls, GWClass.hyperbolic(QQ, n // 2))
        results.append((n, cls.render(), exact, elapsed))
    ok = all(r[2] and r[3] < 1.0 for r in results)
    _report(2, ok, "; ".join(f"e(O({n}),+) = {text} [{dt:.3f}s]"
                             for n, text, exact, dt in results))


def test_criterion_3_odd_euler_numbers():
    lines = []
    ok = True
    for n in (3, 5, 7):
        m = n // 2
        per_sign = {}
        for sign in (1, -1):
            start = time.monotonic()
            cls = euler_o_n(n, sign, "scharlau")
            elapsed = time.monotonic() - start
            expected_triple = (n, sign, (-1) ** m * sign)
            got = gw_invariants(cls).triple()
            ok = ok and got == expected_triple and elapsed < 2.0
            per_sign[sign] = cls
            lines.append(f"e(O({n}),{sign:+d}) = {cls.render()} {got}")
        ok = ok and not gw_equal(per_sign[1], per_sign[-1])
    _report(3, ok, "; ".join(lines) + " (signs differ; invariant triples "
                                      "compared, strict Hasse agreement "
                                      "not required)")


def test_criterion_4_trace_form_micro_check():
    start = time.monotonic()
    k3 = make_extension(QQ, "t^2+t+1")
    a = k3.mul(k3.embed(Fraction(3)), k3.pow(k3.gen(), 2))
    gram = trace_form(k3, a)
    triple = gw_invariants(gram_to_class(gram)).triple()
    elapsed = time.monotonic() - start
    bit_exact = gram.rows == ((Fraction(-3), Fraction(6)),
                              (Fraction(6), Fraction(-3)))
    ok = bit_exact and triple == (2, 0, -3) and elapsed < 1.0
    _report(4, ok, f"trace_form(K3, 3*zeta^2) = {gram.rows}, "
                   f"invariants {triple} [{elapsed:.3f}s]")


def test_criterion_5_stacky_section_independence():
    lines = []
    ok = True
    for n in (3, 5, 7):
        start = time.monotonic()
        naive = stacky_report(n, "naive")
        elapsed = time.monotonic() - start
        expected = GWClass(QQ, 0, [Fraction(1)] * n)
        same = naive["class_plus"] == naive["class_minus"] == expected
        scharlau = euler_o_n_stacky(n, "scharlau")
        triple = gw_invariants(scharlau).triple()
        ok = ok and same and elapsed < 2.0
        lines.append(f"n={n}: naive {naive['class_plus'].render()} both signs, "
                     f"scharlau {scharlau.render()} {triple}")
    _report(5, ok, "; ".join(lines))


def test_criterion_6_lines_over_fp():
    """Rank 5, swap covariance, point agreement, stacky class 2H + <1>.

    The raw chart disc is draw-dependent (rescaling a covector by u
    multiplies the whole class by <u>), so the pinned disc statement is
    the section-independent resolved class; raw discs are tallied below.
    """
    ok = True
    lines = []
    for p in (7, 11, 13):
        start = time.monotonic()
        report = verify_lines_class(p, seed=42, trials=5)
        elapsed = time.monotonic() - start
        non_degenerate = [t for t in report.trials if not t.degenerate]
        ok = ok and len(non_degenerate) == 5
        raw_disc_one = sum(1 for t in non_degenerate if t.disc_ok)
        for t in non_degenerate:
            ok = ok and t.rank_ok and t.stacky_ok and t.swap_ok and t.points_ok
            ok = ok and t.detail["stacky_class"] == "2H + <1>"
        per_trial = elapsed / max(1, len(report.trials))
        ok = ok and per_trial < 120.0
        lines.append(f"p={p}: 5/5 rank-5, stacky 2H + <1>, swap-covariant, "
                     f"points match; raw disc <1> in {raw_disc_one}/5 "
                     f"(draw-dependent) [{per_trial:.1f}s/trial]")
    _report(6, ok, " | ".join(lines))


def test_criterion_7_lines_over_q():
    start = time.monotonic()
    result = euler_lines(reference_lines_config())
    elapsed = time.monotonic() - start
    inv, swapped_inv = result.invariants()
    split = hyperbolic_split(result.gw_class)
    ok = (result.dim == 5 and inv.rank == 5 and abs(inv.signature) == 1
          and split is not None and split[0] == 2
          and swapped_inv.signature == -inv.signature
          and elapsed < 600.0)
    _report(7, ok, f"committed config: {result.gw_class.render()} = "
                   f"2H + <{split[1].render() if split else '?'}>, "
                   f"signature {inv.signature} (swapped {swapped_inv.signature}), "
                   f"stacky {stacky_lines_class(result).render()} "
                   f"[{elapsed:.1f}s]")


def test_criterion_8_property_suites():
    start = time.monotonic()
    counts = {
        "a presentation-independence": suite_presentation_independence(50),
        "b jacobian-oracle": suite_jacobian_oracle(50),
        "c hyperbolic-recognition": suite_hyperbolic_recognition(100),
        "d hilbert-symbol": suite_hilbert_symbol(100),
        "e trace-form-nondegeneracy": suite_trace_form_nondegenerate(50),
        "f row-operation-covariance": suite_row_operation_covariance(50),
    }
    elapsed = time.monotonic() - start
    ok = all(v >= 50 for v in counts.values()) and elapsed < 300.0
    _report(8, ok, ", ".join(f"({k}) {v} cases" for k, v in counts.items())
            + f" [{elapsed:.1f}s]")


def test_criterion_9_degenerate_contracts():
    start = time.monotonic()
    with pytest.raises(NonIsolatedZeros):
        ss_class(parse_system("x^2;x*y", QQ, variables=("x", "y")))
    cfg = draw_plane_config(7, splitmix64(3))
    planes = list(cfg.planes)
    planes[1] = planes[0]
    trial = examine_config(PlaneConfig(PrimeField(7), 4, planes))
    duplicated_flagged = trial.degenerate or not trial.rank_ok
    with pytest.raises(CharTwo):
        PrimeField(2)
    elapsed = time.monotonic() - start
    ok = duplicated_flagged and elapsed < 1.0
    _report(9, ok, f"NonIsolatedZeros raised; duplicated plane flagged "
                   f"(degenerate={trial.degenerate}); characteristic 2 "
                   f"rejected [{elapsed:.3f}s]")

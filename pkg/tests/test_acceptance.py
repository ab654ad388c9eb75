"""Acceptance gate: every shipping criterion at its stated tolerance.

Each test delegates to the corresponding check in engelsr.acceptance (the
same functions the CLI `selftest` runs) and prints its pass/fail line.
"""

import pytest

from engelsr import acceptance as acc


def _run(fn, *args):
    res = fn(*args)
    mark = "PASS" if res.passed else "FAIL"
    print(f"[{mark}] {res.index:2d} {res.name}: {res.detail} ({res.seconds:.2f}s)")
    assert res.passed, res.detail


def test_criterion_01_critical_modulus():
    _run(acc.c01_critical_modulus)


def test_criterion_02_z_return_root():
    _run(acc.c02_z_return_root)


def test_criterion_03_closed_form_endpoints():
    _run(acc.c03_closed_form_endpoints)


def test_criterion_04_symmetry_commutation():
    _run(acc.c04_symmetry_commutation)


def test_criterion_05_dilation_and_homogeneity():
    _run(acc.c05_dilation_and_homogeneity)


def test_criterion_06_curve_suites():
    _run(acc.c06_curve_suites)


def test_criterion_07_separatrix_constants():
    _run(acc.c07_separatrix_constants)


def test_criterion_08_two_minimizer_round_trips():
    _run(acc.c08_two_minimizer_round_trips)


def test_criterion_09_figure_eight_family():
    _run(acc.c09_figure_eight_family)


def test_criterion_10_generic_recovery():
    _run(acc.c10_generic_recovery)


def test_criterion_11_past_cut_competitor():
    _run(acc.c11_past_cut_competitor)


def test_criterion_12_slope_signs():
    _run(acc.c12_slope_signs)

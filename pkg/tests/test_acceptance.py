"""Acceptance checklist, one test per criterion.

Each test runs the corresponding verification check, prints its
one-line report (visible with pytest -v -s or on failure) and asserts
the pass flag.  Budgets are enforced inside the checks themselves.
"""

from bewitness import verify


def _run(check):
    result = check()
    print(result.line())
    assert result.passed, result.line()


def test_criterion_01_spectrum():
    _run(verify.check_spectrum)


def test_criterion_02_ccnr_value():
    _run(verify.check_ccnr_value)


def test_criterion_03_witness_brute_force():
    _run(verify.check_witness_brute_force)


def test_criterion_04_separable_saturation():
    _run(verify.check_separable_saturation)


def test_criterion_05_m_matrix():
    _run(verify.check_m_matrix)


def test_criterion_06_visibility():
    _run(verify.check_visibility)


def test_criterion_07_overhead():
    _run(verify.check_overhead)


def test_criterion_08_factorization():
    _run(verify.check_factorization)


def test_criterion_09_seesaw():
    _run(verify.check_seesaw)


def test_criterion_10_ccnr_ascent():
    _run(verify.check_ccnr_ascent)


def test_criterion_11_property_suite():
    _run(verify.check_property_suite)

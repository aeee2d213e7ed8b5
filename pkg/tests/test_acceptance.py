"""Acceptance criteria, one test per criterion.

Each test runs the suites that cover its criterion, requires every claim to
pass and every suite to finish within the time budget, and records one
PASS/FAIL line. The lines are printed in the terminal summary.
"""

import time

import pytest

from qfuzzy.suites import SuiteOptions, run_suite

TIME_BUDGET = 60.0
RESULTS: dict[int, str] = {}

CRITERIA = [
    (1, "projector identities", ["spheres:classical", "spheres:fuzzy", "spheres:qsphere", "spheres:qfuzzy"]),
    (2, "q-fuzzy and Podleś sphere equivalences", ["spheres:prop1"]),
    (3, "braided spheres for several R-matrices", ["rmatrix:spheres"]),
    (4, "Casimir quotient and the Podleś patch", ["spheres:prop3"]),
    (5, "time slices and localization", ["spheres:prop4", "spheres:localization"]),
    (6, "calculus core", ["dga:core"]),
    (7, "R-matrix versus hand-written bimodule relations", ["dga:eq9-crosscheck"]),
    (8, "localized calculus on U_q(su2)", ["dga:localized"]),
    (9, "q-trace constraint", ["dga:trace-constraint"]),
    (10, "transmutation, cotwist and Maurer-Cartan", ["dga:appendix"]),
    (11, "bicrossproduct calculus", ["bicross:dga", "bicross:partials", "bicross:laplacian", "bicross:limit"]),
    (12, "robustness and negative controls", ["robustness"]),
]


@pytest.mark.parametrize("number,title,suites", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, title, suites):
    failures = []
    for name in suites:
        start = time.perf_counter()
        report = run_suite(name, SuiteOptions())
        elapsed = time.perf_counter() - start
        failures += [f"{name}/{c.id}" for c in report.failures]
        if elapsed > TIME_BUDGET:
            failures.append(f"{name} took {elapsed:.1f}s")
    status = "FAIL" if failures else "PASS"
    detail = f" ({len(failures)} failing: {', '.join(failures[:3])}{', ...' if len(failures) > 3 else ''})" if failures else ""
    RESULTS[number] = f"{status} criterion {number}: {title}{detail}"
    print(RESULTS[number])
    assert not failures, RESULTS[number]

"""The ten acceptance criteria, run once per session at seed 0.

Each criterion prints one PASS/FAIL line (visible without -s). Set
ACCEPTANCE_JOBS to change the worker count (default: up to 4).
"""

import os

import pytest

from erdos_sos.battery import run_suite

JOBS = int(os.environ.get("ACCEPTANCE_JOBS", min(4, os.cpu_count() or 1)))


@pytest.fixture(scope="session")
def suite(request):
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def report(res):
        with capman.global_and_fixture_disabled():
            print("\n" + res.line(), flush=True)

    results = run_suite(seed=0, jobs=JOBS, report=report)
    return {r.number: r for r in results}


@pytest.mark.slow
@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(suite, number):
    res = suite[number]
    assert res.passed, f"{res.line()}\nfirst failures: {res.failures[:3]}"

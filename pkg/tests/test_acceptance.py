"""Every acceptance criterion at its stated size and tolerance.

Each test prints one PASS/FAIL line; the lines are also repeated in the
terminal summary.
"""
import pytest

from bicellular import acceptance

LINES = []


def _run(check):
    r = check()
    line = r.line()
    print(line)
    LINES.append(line)
    assert r.passed, line


@pytest.mark.slow
@pytest.mark.parametrize("check", [
    acceptance.check_trisections,
    acceptance.check_counts,
    acceptance.check_roundtrips,
    acceptance.check_uniform_matchings,
    acceptance.check_uniform_diagrams,
    acceptance.check_duality,
    acceptance.check_loops_and_shapes,
    acceptance.check_linear_time,
    acceptance.check_stats_pipeline,
], ids=lambda f: f.__name__)
def test_criterion(check):
    _run(check)

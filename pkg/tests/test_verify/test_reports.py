"""Tests for sweep results and the verify summary."""

import pickle

from cuspidal_shadow.reports import SweepResult, VerifySummary


def test_result_without_timings():
    result = SweepResult("convexity", "A2", checked=2)
    assert result.passed
    assert result.time_p50 is None
    assert result.to_dict() == {"name": "convexity", "cartan": "A2", "passed": True, "checked": 2, "failures": []}
    assert str(result) == "Sweep convexity on A2: passed checked=2"


def test_result_with_timings():
    result = SweepResult("pbw-basis", "A3")
    for seconds in (0.1, 0.2, 0.3, 0.4, 0.5):
        result.record_time(seconds)
    assert 0.1 <= result.time_p50 <= 0.5
    assert result.time_p50 <= result.time_p90 <= result.time_p99
    assert set(result.to_dict(timings=True)["timings"]) == {"p50", "p90", "p99"}
    assert pickle.loads(pickle.dumps(result)).time_p50 == result.time_p50


def test_skipped_result():
    result = SweepResult("unmixed", "E6", skipped="E-series denominator tables are not implemented")
    assert result.passed
    assert result.to_dict()["skipped"].startswith("E-series")
    assert "skipped" in str(result)


def test_summary_is_sorted_and_collects_failures():
    summary = VerifySummary(
        [
            SweepResult("unmixed", "A2", 1, ["line broken"]),
            SweepResult("convexity", "A2", 3),
        ]
    )
    assert [r.name for r in summary.results] == ["convexity", "unmixed"]
    assert not summary.passed
    assert summary.failures == ["A2/unmixed: line broken"]
    assert summary.to_dict()["passed"] is False

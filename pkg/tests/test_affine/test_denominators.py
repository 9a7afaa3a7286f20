"""Tests for denominator zeros, δ between fundamental labels and strong duality data."""

import pytest

from cuspidal_shadow import affine
from cuspidal_shadow.affine import (
    FundLabel,
    c0_labels,
    delta_fund,
    denominator_table,
    denominator_zeros,
    dshift_power,
    root_module_check,
    simple_root_labels,
    strong_datum_check,
)
from cuspidal_shadow.exceptions import ConfigurationError, UnsupportedFeatureError
from cuspidal_shadow.liecore import CartanDatum
from cuspidal_shadow.qdata import DynkinQuiver, dynkin_quivers, height_functions


@pytest.mark.parametrize(
    "series, n, i, j, zeros",
    [
        ("A", 2, 1, 1, (2,)),
        ("A", 2, 1, 2, (3,)),
        ("A", 3, 2, 2, (2, 4)),
        ("A", 4, 1, 3, (4,)),
        ("D", 4, 1, 1, (2, 6)),
        ("D", 4, 2, 2, (2, 4, 4, 6)),
        ("D", 4, 1, 3, (4,)),
        ("D", 4, 3, 3, (2, 6)),
        ("D", 4, 3, 4, (4,)),
        ("D", 5, 4, 5, (4, 8)),
    ],
)
def test_denominator_zeros(series, n, i, j, zeros):
    assert denominator_zeros(series, n, i, j) == zeros
    assert denominator_zeros(series, n, j, i) == zeros


def test_denominator_table_errors():
    with pytest.raises(UnsupportedFeatureError):
        denominator_table("E", 6)
    with pytest.raises(ConfigurationError):
        denominator_table("D", 3)
    with pytest.raises(ConfigurationError):
        denominator_zeros("A", 2, 1, 3)


def test_table_multiplicity():
    assert denominator_table("D", 4).multiplicity(2, 2, 4) == 2


def test_delta_fund_a2(a2):
    assert delta_fund(a2, FundLabel(2, -1), FundLabel(2, 1)) == 1
    assert delta_fund(a2, FundLabel(2, 1), FundLabel(2, -1)) == 1
    assert delta_fund(a2, FundLabel(1, 0), FundLabel(2, 3)) == 1
    assert delta_fund(a2, FundLabel(1, 0), FundLabel(1, 0)) == 0


def test_dshift_power(a2):
    x = FundLabel(2, -1)
    assert dshift_power(a2, x, 1) == FundLabel(1, 2)
    assert dshift_power(a2, x, -1) == FundLabel(1, -4)
    assert dshift_power(a2, x, 2) == FundLabel(2, 5)
    assert dshift_power(a2, x, 0) == x


@pytest.mark.parametrize("cartan", ["a2", "a3", "d4"])
def test_every_fundamental_label_is_a_root_module(request, cartan):
    C = request.getfixturevalue(cartan)
    assert all(root_module_check(C, x) for x in c0_labels(C, 0, 1))


def test_c0_labels(a2):
    assert c0_labels(a2, 0, 1) == [FundLabel(1, 0), FundLabel(2, 1)]


def test_a2_strong_datum(a2):
    q = height_functions(DynkinQuiver.parse(a2, "2>1"))[0]
    labels = simple_root_labels(q)
    assert labels == {1: FundLabel(1, 0), 2: FundLabel(1, 2)}
    report = strong_datum_check(labels, a2)
    assert report.passed, report.to_dict()
    assert report.recovered == ((2, -1), (-1, 2))


@pytest.mark.parametrize("cartan", ["a3", "d4"])
def test_simple_roots_of_every_qdatum_form_a_strong_datum(request, cartan):
    C = request.getfixturevalue(cartan)
    for quiver in dynkin_quivers(C):
        report = strong_datum_check(simple_root_labels(height_functions(quiver)[0]), C)
        assert report.passed, report.to_dict()


def test_strong_datum_failure_is_reported(a2):
    report = strong_datum_check({1: FundLabel(1, 0), 2: FundLabel(1, 0)}, a2)
    assert not report.passed
    assert report.recovered == ((2, 0), (0, 2))
    assert (1, 2, 0, 0) in report.pair_failures


def test_datum_for_a_smaller_target(a3):
    # A1 inside the A3 category: a single fundamental label
    report = strong_datum_check({1: FundLabel(2, 1)}, CartanDatum.of_type("A", 1), affine_type=a3)
    assert report.passed


def test_root_module_scan_reaches_three_coxeter_numbers(a3, monkeypatch):
    seen = []

    def recording_dshift(C, x, k):
        seen.append(k)
        return dshift_power(C, x, k)

    monkeypatch.setattr(affine, "dshift_power", recording_dshift)
    assert root_module_check(a3, FundLabel(2, 1))
    assert (min(seen), max(seen)) == (-12, 12)


def test_root_module_scan_sees_far_denominator_zeros(a2, monkeypatch):
    def far_zero(C, x, y):
        # an extra zero at D^{±4}, past |k| ≤ h
        return 1 if abs(y.p - x.p) in (3, 12) else 0

    monkeypatch.setattr(affine, "delta_fund", far_zero)
    assert not root_module_check(a2, FundLabel(1, 0))

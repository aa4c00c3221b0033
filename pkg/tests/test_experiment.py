from decimal import Decimal

import pytest

from unitarea.experiment import ExperimentResult, ScalingSeries, loglog_fit, scaling_fit


def test_square_law():
    assert scaling_fit(ScalingSeries(((4, 16), (8, 64), (16, 256)))) == Decimal("2.0000")


def test_linear_law():
    assert scaling_fit(ScalingSeries(((4, 4), (8, 8), (16, 16)))) == Decimal("1.0000")


def test_single_point_is_an_error():
    with pytest.raises(ValueError):
        scaling_fit(ScalingSeries(((4, 16),)))


def test_zero_counts_dropped_with_warning():
    with pytest.warns(UserWarning):
        slope, _ = loglog_fit([2, 4, 8, 16], [0, 16, 64, 256])
    assert slope == pytest.approx(2.0)
    with pytest.warns(UserWarning), pytest.raises(ValueError):
        loglog_fit([2, 4], [0, 5])


def test_series_validation():
    with pytest.raises(ValueError):
        ScalingSeries(((8, 1), (4, 1)))
    with pytest.raises(ValueError):
        ScalingSeries(((4, -1), (8, 1)))


def test_result_record_shape():
    rec = ExperimentResult("count", params={"n": 3}, total=4, restricted=None,
                           slope=Decimal("2.05"), elapsed_ms=1.23456).to_json_dict()
    assert set(rec) == {"subcommand", "params", "counts", "audits", "slope", "elapsed_ms"}
    assert rec["counts"] == {"total": 4, "restricted": None, "classes": {}}
    assert rec["slope"] == "2.0500"

import math
from pathlib import Path

import pytest

import aodt

XOR_COLUMNS = ["f0", "f1", "y"]
XOR_ROWS = [
    ["0", "0", "0"],
    ["0", "1", "1"],
    ["1", "0", "1"],
    ["1", "1", "0"],
]


def test_fit_solves_xor():
    result = aodt.fit(XOR_COLUMNS, XOR_ROWS, "y", 0.01)
    assert math.isclose(result["objective"], 0.97, abs_tol=1e-9)
    assert math.isclose(result["accuracy"], 1.0, abs_tol=1e-12)
    assert result["splits"] == 3
    assert result["termination"] == "solved"
    assert result["model"]["splits"] == 3


def test_predict_round_trips_training_rows():
    result = aodt.fit(XOR_COLUMNS, XOR_ROWS, "y", 0.01)
    rows = [r[:2] for r in XOR_ROWS]
    assert aodt.predict(result["model"], rows) == ["0", "1", "1", "0"]


def test_oracle_agrees_with_fit():
    fitted = aodt.fit(XOR_COLUMNS, XOR_ROWS, "y", 0.01)
    exact = aodt.oracle(XOR_COLUMNS, XOR_ROWS, "y", 0.01)
    assert math.isclose(fitted["objective"], exact["objective"], abs_tol=1e-9)
    assert fitted["splits"] == exact["splits"]


def test_fit_csv_on_monk1():
    data = Path(__file__).resolve().parents[2] / "data" / "monk1.csv"
    result = aodt.fit_csv(str(data), "class", 0.01, encoding="onehot")
    assert math.isclose(result["objective"], 0.94, abs_tol=1e-3)
    assert math.isclose(result["accuracy"], 1.0, abs_tol=1e-12)
    assert result["splits"] == 6


def test_bound_calculators():
    assert aodt.gamma_bound(10, 2, 2, 0.1) == 57020
    assert aodt.bound_kappa(10, 2, 2, 0.1) == 4
    assert aodt.bound_kappa(10, 2, 2, 0.6) == -1
    assert aodt.gamma_bound(10, 2, 2, 0.6) == 0
    dependent = aodt.gamma_bound(10, 2, 2, 0.1, s_star=6, h_star=1.0)
    assert dependent > 0
    assert aodt.gamma_bound(20, 2, 2, 0.01) == 46490458680


def test_branch_counts_expose_both_numbers():
    assert aodt.unnecessary_branch_count(1, 2) == 4
    assert aodt.enumerate_empty_branches(1, 2) == 2
    assert aodt.unnecessary_branch_count(2, 3) == 680
    assert aodt.enumerate_empty_branches(2, 3) == 368


def test_constant_column_raises_data_error():
    columns = ["a", "b", "y"]
    rows = [["0", "1", "0"], ["0", "0", "1"]]
    with pytest.raises(aodt.DataError):
        aodt.fit(columns, rows, "y", 0.01)
    with pytest.raises(ValueError):
        aodt.fit(columns, rows, "y", 0.01)


def test_bad_lambda_raises_usage_error():
    with pytest.raises(aodt.UsageError):
        aodt.fit(XOR_COLUMNS, XOR_ROWS, "y", 1.5)

"""CSV reader tests against handcrafted tables."""

import math

import pytest

from dmimo_figures import EmptyTableError, FigureError, MissingColumnError, read_sweep_csv


def write_csv(path, header, rows):
    lines = [",".join(header)] + [",".join(str(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def test_round_trip(tmp_path):
    path = write_csv(
        tmp_path / "sweep.csv",
        ["axis", "axis_value", "n_trials", "c1_min_mean", "c1_min_se"],
        [["radius", 50.0, 10, 21.5, 0.3], ["radius", 100.0, 10, 15.25, 0.5]],
    )
    data = read_sweep_csv(path)
    assert data.axis == "radius"
    assert data.axis_values == (50.0, 100.0)
    assert data.column("c1_min_mean") == (21.5, 15.25)
    assert data.column("n_trials") == (10.0, 10.0)
    assert data.has_columns(["c1_min_mean", "c1_min_se"])
    assert not data.has_columns(["c1_min_mean", "c2_closed_mean"])


def test_nan_cells_parse(tmp_path):
    path = write_csv(
        tmp_path / "sweep.csv",
        ["axis", "axis_value", "gain_ratio_mean"],
        [["u", 0, "nan"]],
    )
    assert math.isnan(read_sweep_csv(path).column("gain_ratio_mean")[0])


def test_missing_axis_column(tmp_path):
    path = write_csv(tmp_path / "bad.csv", ["axis", "c1_min_mean"], [["radius", 1.0]])
    with pytest.raises(MissingColumnError, match="axis_value"):
        read_sweep_csv(path)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(EmptyTableError):
        read_sweep_csv(path)


def test_header_without_rows(tmp_path):
    path = write_csv(tmp_path / "header.csv", ["axis", "axis_value", "c1_min_mean"], [])
    with pytest.raises(EmptyTableError, match="no data rows"):
        read_sweep_csv(path)


def test_malformed_cell(tmp_path):
    path = write_csv(
        tmp_path / "bad.csv",
        ["axis", "axis_value", "c1_min_mean"],
        [["radius", 50.0, "not-a-number"]],
    )
    with pytest.raises(FigureError, match="malformed numeric cell"):
        read_sweep_csv(path)


def test_unknown_column_lookup(tmp_path):
    path = write_csv(
        tmp_path / "sweep.csv", ["axis", "axis_value", "c1_min_mean"], [["radius", 50.0, 1.0]]
    )
    with pytest.raises(MissingColumnError, match="c2_closed_mean"):
        read_sweep_csv(path).column("c2_closed_mean")

"""Reader for the simulator's sweep CSV files.

The renderer never computes physics: everything it draws comes out of
these tables. A sweep CSV starts with `axis,axis_value,n_trials` and
continues with one `<metric>_<stat>` column per aggregated metric; one
row per sweep point, floats as written by repr() (so "nan" is legal).
"""

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyTableError, FigureError, MissingColumnError


@dataclass(frozen=True)
class SweepData:
    """One parsed sweep CSV: the swept axis plus named metric columns."""

    axis: str
    axis_values: tuple[float, ...]
    columns: dict[str, tuple[float, ...]]
    path: str

    def column(self, name: str) -> tuple[float, ...]:
        if name not in self.columns:
            raise MissingColumnError(f"{self.path}: missing column {name!r}")
        return self.columns[name]

    def has_columns(self, names) -> bool:
        return all(name in self.columns for name in names)


def read_sweep_csv(path: str | Path) -> SweepData:
    """Parse a sweep CSV, validating shape but not figure-specific columns."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames
        if fields is None:
            raise EmptyTableError(f"{path}: empty file")
        for required in ("axis", "axis_value"):
            if required not in fields:
                raise MissingColumnError(f"{path}: missing column {required!r}")
        rows = list(reader)
    if not rows:
        raise EmptyTableError(f"{path}: no data rows")

    metric_fields = [f for f in fields if f not in ("axis", "axis_value")]
    try:
        axis_values = tuple(float(row["axis_value"]) for row in rows)
        columns = {
            name: tuple(float(row[name]) for row in rows) for name in metric_fields
        }
    except (TypeError, ValueError) as exc:
        raise FigureError(f"{path}: malformed numeric cell ({exc})") from exc
    return SweepData(
        axis=rows[0]["axis"],
        axis_values=axis_values,
        columns=columns,
        path=str(path),
    )

"""Reference integer tables shipped with the package.

Each column lives in its own ``p<TAB>value`` file under ``data/`` so that
diffs stay readable.  ``tab1`` holds prime alternating tangle counts at
n = 1 (columns G4c, G6c, G8c); ``tab2`` holds the n = -2 coefficients
(column Gamma).
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

COLUMNS = {
    "tab1": ("G4c", "G6c", "G8c"),
    "tab2": ("Gamma",),
}

LEGS = {"G4c": 4, "G6c": 6, "G8c": 8}


@dataclass(frozen=True)
class GoldenTable:
    table: str
    columns: dict[str, dict[int, int]]

    def rows(self):
        for col, values in self.columns.items():
            for p, v in sorted(values.items()):
                yield p, col, v

    def column(self, name: str) -> dict[int, int]:
        return self.columns[name]


def parse_column(text: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            p, v = line.split("\t")
            out[int(p)] = int(v)
        except ValueError as exc:
            raise ValueError(f"malformed golden row {lineno}: {line!r}") from exc
    return out


def load_table(table: str, directory: str | Path | None = None) -> GoldenTable:
    if table not in COLUMNS:
        raise KeyError(f"unknown table {table!r}")
    cols = {}
    for col in COLUMNS[table]:
        name = f"{table}_{col}.tsv"
        if directory is None:
            text = resources.files("tangles").joinpath("data", name).read_text()
        else:
            text = (Path(directory) / name).read_text()
        cols[col] = parse_column(text)
    return GoldenTable(table, cols)

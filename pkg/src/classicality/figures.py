"""Tabulated data behind the three figures, plus a deterministic CSV writer."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from .measures import anticlassicality_closed, fidelity_fn

__all__ = ["Table", "fig1_data", "fig2_data", "fig3_data", "FIGURES", "format_number", "write_csv", "to_csv"]


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    rows: list[tuple[float, ...]]

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows])

    def to_records(self) -> list[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def fig1_data(samples: int = 100, eta_max: float = 0.99, alpha_sq_max: float = 8.0, n: int = 3) -> Table:
    """Surface ``f_n(eta, |alpha|^2)`` on a ``samples x samples`` grid."""
    if samples < 2:
        raise ValueError("need at least two samples per axis")
    etas = np.linspace(0.0, eta_max, samples)
    rs = np.linspace(0.0, alpha_sq_max, samples)
    rows = [(float(e), float(r), fidelity_fn(n, float(e), float(r))) for e in etas for r in rs]
    return Table(("eta", "alpha_sq", f"f{n}"), rows)


def fig2_data(samples: int = 801, nbar_max: float = 8.0) -> Table:
    """Vacuum-excluded anticlassicality of coherent states against ``nbar``."""
    if samples < 2:
        raise ValueError("need at least two samples")
    nbars = np.linspace(0.0, nbar_max, samples)
    return Table(("nbar", "A1_coherent"), [(float(x), anticlassicality_closed("coherent", float(x), "A1")) for x in nbars])


def fig3_data(samples: int = 1001, nbar_max: float = 10.0) -> Table:
    """Vacuum-excluded anticlassicality of squeezed vacuum and coherent phase
    states next to the purity-weighted one of thermal states."""
    if samples < 2:
        raise ValueError("need at least two samples")
    rows = []
    for x in np.linspace(0.0, nbar_max, samples):
        x = float(x)
        rows.append(
            (
                x,
                anticlassicality_closed("sqv", x, "A1"),
                anticlassicality_closed("phase", x, "A1"),
                anticlassicality_closed("thermal", x, "Atilde1"),
            )
        )
    return Table(("nbar", "A1_sqv", "A1_phase", "Atilde1_thermal"), rows)


FIGURES = {"fig1": fig1_data, "fig2": fig2_data, "fig3": fig3_data}


def format_number(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, (float, np.floating)):
        return "%.12g" % value
    return str(value)


def write_csv(columns, rows, stream: IO[str]) -> None:
    """Comma-separated, header row, LF endings, ``%.12g`` numbers."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(v) for v in row])


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    write_csv(table.columns, table.rows, buf)
    return buf.getvalue()

"""
DephasingTableRepository - CSV persistence of measured γ*(T) tables.

Format: UTF-8, header "T_K,gamma_star_meV", one "T,γ*" row per line,
decimal point, no thousands separators. Rows must already be sorted by
temperature; they are validated, never re-sorted.
"""

from pathlib import Path

import numpy as np
from pydantic import ValidationError

from app.models.dephasing import DephasingSample, DephasingTable

HEADER = "T_K,gamma_star_meV"


class DephasingTableError(Exception):
    """Raised when a dephasing CSV is missing, malformed or fails validation."""
    pass


class DephasingTableRepository:
    def load(self, path: str | Path, anchor: bool = True) -> DephasingTable:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DephasingTableError(f"cannot read dephasing table {path}: {exc}") from exc

        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines or lines[0].replace(" ", "") != HEADER:
            raise DephasingTableError(f"{path}: expected header '{HEADER}'")

        rows = []
        for lineno, line in enumerate(lines[1:], start=2):
            fields = line.split(",")
            if len(fields) != 2:
                raise DephasingTableError(f"{path}:{lineno}: malformed row '{line}'")
            try:
                rows.append(np.array(fields, dtype=float))
            except ValueError as exc:
                raise DephasingTableError(f"{path}:{lineno}: malformed row '{line}'") from exc

        try:
            return DephasingTable(
                samples=tuple(DephasingSample(T=T, gamma_star=gs) for T, gs in rows),
                anchor=anchor,
            )
        except ValidationError as exc:
            message = exc.errors()[0]["msg"].removeprefix("Value error, ")
            raise DephasingTableError(f"{path}: {message}") from exc

    def save(self, table: DephasingTable, path: str | Path) -> Path:
        path = Path(path)
        data = np.array([[s.T, s.gamma_star] for s in table.samples])
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            np.savetxt(fh, data, fmt="%.17g", delimiter=",", header=HEADER, comments="")
        return path

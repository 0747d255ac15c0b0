"""
ResultsRepository - CSV output of sweeps and trajectories.

Sweep files open with the resolved configuration as "# " comment lines, then
one header row and numeric rows printed with 17 significant digits, so a
re-run from the echoed configuration reproduces the file byte for byte.
"""

import io
from pathlib import Path
from typing import Optional, TextIO

import numpy as np

from app.models.lindblad import ExpectationSeries, Trajectory
from app.models.sweep import SweepResult

COMMENT = "# "
TRAJECTORY_COLUMNS = ["t_hbar_per_ueV", "n_e", "n_ph", "trace_err", "min_eig"]


class ResultsError(Exception):
    """Raised when a results file cannot be written or parsed."""
    pass


class ResultsRepository:
    def __init__(self, precision: int = 17):
        self.fmt = f"%.{precision}g"

    def _write_table(
        self,
        fh: TextIO,
        columns: list[str],
        rows: np.ndarray,
        provenance: str = "",
    ) -> None:
        for line in provenance.splitlines():
            fh.write(f"{COMMENT}{line}".rstrip() + "\n")
        fh.write(",".join(columns) + "\n")
        if rows.size:
            np.savetxt(fh, rows, fmt=self.fmt, delimiter=",")

    def render_sweep(self, result: SweepResult) -> str:
        buffer = io.StringIO()
        self._write_table(buffer, result.columns, result.rows, result.provenance)
        return buffer.getvalue()

    def save_sweep(self, result: SweepResult, path: str | Path) -> Path:
        path = Path(path)
        try:
            with path.open("w", encoding="utf-8", newline="\n") as fh:
                self._write_table(fh, result.columns, result.rows, result.provenance)
        except OSError as exc:
            raise ResultsError(f"cannot write {path}: {exc}") from exc
        return path

    def load_sweep(self, path: str | Path) -> SweepResult:
        path = Path(path)
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise ResultsError(f"cannot read {path}: {exc}") from exc

        provenance = [line[len(COMMENT):] if line.startswith(COMMENT) else line[1:]
                      for line in lines if line.startswith("#")]
        body = [line for line in lines if line and not line.startswith("#")]
        if not body:
            raise ResultsError(f"{path}: missing header row")

        columns = body[0].split(",")
        try:
            rows = np.array([line.split(",") for line in body[1:]], dtype=float)
        except ValueError as exc:
            raise ResultsError(f"{path}: non-numeric row") from exc
        return SweepResult(
            columns=columns,
            rows=rows.reshape(len(body) - 1, len(columns)),
            provenance="\n".join(provenance),
        )

    def trajectory_rows(self, trajectory: Trajectory, series: ExpectationSeries) -> np.ndarray:
        return np.column_stack([
            trajectory.times,
            series.n_e,
            series.n_ph,
            [d.trace_error for d in trajectory.diagnostics],
            [d.min_eigenvalue for d in trajectory.diagnostics],
        ])

    def save_trajectory(
        self,
        trajectory: Trajectory,
        series: ExpectationSeries,
        path: Optional[str | Path] = None,
        provenance: str = "",
    ) -> str:
        """Write t, ⟨n_e⟩, ⟨n_ph⟩ and diagnostics; returns the CSV text."""
        buffer = io.StringIO()
        self._write_table(
            buffer, TRAJECTORY_COLUMNS, self.trajectory_rows(trajectory, series), provenance
        )
        text = buffer.getvalue()
        if path is not None:
            try:
                Path(path).write_text(text, encoding="utf-8", newline="\n")
            except OSError as exc:
                raise ResultsError(f"cannot write {path}: {exc}") from exc
        return text

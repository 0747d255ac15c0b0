"""
Unit tests for ResultsRepository
"""

import numpy as np
import pytest

from app.models.lindblad import DensityDiagnostics, DensityMatrix, ExpectationSeries, HilbertConfig, Trajectory
from app.models.sweep import SweepResult
from app.repositories.results_repository import TRAJECTORY_COLUMNS, ResultsError, ResultsRepository


@pytest.fixture
def repo():
    return ResultsRepository()


@pytest.fixture
def result():
    rows = np.array([[10.0, 1 / 3, 2.0e-7], [20.0, np.pi, 1.0e5]])
    return SweepResult(
        columns=["T_K", "R_ueV", "efficiency"],
        rows=rows,
        provenance="[system]\ng_ueV = 50",
    )


class TestResultsRepository:
    """Test suite for sweep and trajectory CSV files."""

    def test_sweep_layout(self, repo, result):
        """Test provenance comments, header, then 17-digit rows."""
        lines = repo.render_sweep(result).splitlines()

        assert lines[0] == "# [system]"
        assert lines[1] == "# g_ueV = 50"
        assert lines[2] == "T_K,R_ueV,efficiency"
        assert lines[3].split(",")[1] == "0.33333333333333331"

    def test_sweep_file_reparses_exactly(self, repo, result, tmp_path):
        path = repo.save_sweep(result, tmp_path / "sweep.csv")

        # Act
        loaded = repo.load_sweep(path)

        # Assert
        assert loaded.columns == result.columns
        assert np.array_equal(loaded.rows, result.rows)
        assert loaded.provenance == result.provenance

    def test_empty_sweep(self, repo, tmp_path):
        empty = SweepResult(columns=["V_um3", "g_ueV"], rows=np.empty((0, 2)))
        loaded = repo.load_sweep(repo.save_sweep(empty, tmp_path / "empty.csv"))
        assert loaded.rows.shape == (0, 2)

    def test_missing_file(self, repo, tmp_path):
        with pytest.raises(ResultsError):
            repo.load_sweep(tmp_path / "missing.csv")

    def test_unwritable_path(self, repo, result, tmp_path):
        with pytest.raises(ResultsError, match="cannot write"):
            repo.save_sweep(result, tmp_path / "no" / "such" / "dir.csv")

    def test_trajectory_columns(self, repo, tmp_path):
        hilbert = HilbertConfig(n_max=1)
        state = DensityMatrix.basis_state(hilbert, "e", 0)
        diag = DensityDiagnostics(trace_error=0.125, hermiticity_defect=0.0, min_eigenvalue=-0.25)
        times = np.array([0.0, 0.1])
        trajectory = Trajectory(times=times, states=[state, state], diagnostics=[diag, diag])
        series = ExpectationSeries(times=times, n_e=np.array([1.0, 0.9]), n_ph=np.array([0.0, 0.1]))

        text = repo.save_trajectory(trajectory, series, tmp_path / "traj.csv")

        lines = text.splitlines()
        assert lines[0] == ",".join(TRAJECTORY_COLUMNS)
        assert lines[2].split(",") == ["0.10000000000000001", "0.90000000000000002",
                                       "0.10000000000000001", "0.125",
                                       "-0.25"]
        assert (tmp_path / "traj.csv").read_text(encoding="utf-8") == text

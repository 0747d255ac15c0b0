"""
Integration tests for the qdcav command line
"""

import numpy as np
import pytest

from app.main import EXIT_CONFIG, EXIT_FAILURE, EXIT_OK, main
from app.repositories.results_repository import ResultsRepository


class TestSweepCommands:
    """Test suite for the sweep subcommands."""

    def test_transfer_rate_sweep_to_file(self, tmp_path, config_path, capsys):
        out = tmp_path / "rate.csv"

        # Act
        code = main(["transfer-rate-sweep", "--config", str(config_path("fig05_transfer_rate.ini")),
                     "--out", str(out)])

        # Assert
        assert code == EXIT_OK
        assert "[OK] wrote 5 rows" in capsys.readouterr().out
        result = ResultsRepository().load_sweep(out)
        assert result.columns == [
            "T_K", "gamma_star_ueV", "R_ueV[delta_over_g=0]", "R_ueV[delta_over_g=10]",
        ]
        assert result.column("R_ueV[delta_over_g=0]")[1] == pytest.approx(10000 / 471)
        assert result.column("R_ueV[delta_over_g=10]")[1] == pytest.approx(3.8548, abs=1e-4)

    def test_provenance_reruns_identically(self, tmp_path, config_path):
        first = tmp_path / "first.csv"
        second = tmp_path / "second.csv"
        main(["transfer-rate-sweep", "--config", str(config_path("fig05_transfer_rate.ini")),
              "--out", str(first)])

        rerun = tmp_path / "rerun.ini"
        rerun.write_text(ResultsRepository().load_sweep(first).provenance, encoding="utf-8")

        # Act
        code = main(["transfer-rate-sweep", "--config", str(rerun), "--out", str(second)])

        # Assert
        assert code == EXIT_OK
        assert second.read_bytes() == first.read_bytes()

    def test_csv_to_stdout(self, config_path, capsys):
        code = main(["purcell-sweep", "--config", str(config_path("fig09a_purcell_pump.ini"))])

        captured = capsys.readouterr()
        assert code == EXIT_OK
        assert captured.out.startswith("# ; qdcav purcell-sweep")
        assert "[OK]" not in captured.out

    def test_geometry_sweep(self, tmp_path, config_path):
        out = tmp_path / "kappa.csv"

        code = main(["geometry-sweep", "--config", str(config_path("fig02b_total_loss.ini")),
                     "--out", str(out)])

        assert code == EXIT_OK
        result = ResultsRepository().load_sweep(out)
        assert result.columns == ["V_um3", "kappa_ueV[d=2]", "kappa_ueV[d=4]", "kappa_ueV[d=6]"]
        assert result.rows.shape == (19, 4)
        assert result.column("kappa_ueV[d=2]")[0] == pytest.approx(313.09, rel=1e-3)
        np.testing.assert_allclose(
            result.column("kappa_ueV[d=4]"), 4 * result.column("kappa_ueV[d=2]"), rtol=1e-12
        )

    def test_svg_next_to_csv(self, tmp_path, config_path):
        out = tmp_path / "efficiency.csv"

        code = main(["efficiency-sweep", "--config", str(config_path("fig04a_efficiency_temperature.ini")),
                     "--out", str(out), "--svg"])

        assert code == EXIT_OK
        assert (tmp_path / "efficiency.svg").read_text(encoding="utf-8").lstrip().startswith("<?xml")

    def test_log_spacing_plots_on_a_log_axis(self, tmp_path, config_path, write_ini, mocker):
        geometry = config_path("fig02b_total_loss.ini").read_text(encoding="utf-8").split("[sweep]")[0]
        path = write_ini(
            geometry + "[sweep]\nvariable = V\nmin = 1\nmax = 100\ncount = 5\nspacing = log\n"
            "outputs = kappa\n"
        )
        line_plot = mocker.patch("app.controllers.sweeps_controller.line_plot")

        # Act
        code = main(["geometry-sweep", "--config", str(path), "--out", str(tmp_path / "k.csv"), "--svg"])

        # Assert
        assert code == EXIT_OK
        assert line_plot.call_args.kwargs["log_x"] is True

    def test_wrong_variable_for_command(self, write_ini, capsys):
        path = write_ini(
            "[system]\ng_ueV = 50\ngamma_over_g = 0.02\nkappa_over_g = 5\n\n"
            "[sweep]\nvariable = delta\nmin = 0\nmax = 500\n"
        )

        code = main(["transfer-rate-sweep", "--config", str(path)])

        assert code == EXIT_CONFIG
        assert "sweeps one of T" in capsys.readouterr().err

    def test_temperature_beyond_table(self, write_ini, capsys):
        path = write_ini(
            "[system]\ng_ueV = 50\ngamma_over_g = 0.02\nkappa_over_g = 5\n\n"
            "[sweep]\nvariable = T\nmin = 10\nmax = 400\n"
        )

        code = main(["transfer-rate-sweep", "--config", str(path)])

        assert code == EXIT_CONFIG
        assert "outside the dephasing table" in capsys.readouterr().err


class TestUsageErrors:
    """Test suite for exit code 2 on bad invocations."""

    def test_missing_config_file(self, tmp_path):
        assert main(["efficiency-sweep", "--config", str(tmp_path / "nope.ini")]) == EXIT_CONFIG

    def test_config_flag_required(self, capsys):
        assert main(["transfer-rate-sweep"]) == EXIT_CONFIG
        assert "needs --config" in capsys.readouterr().err

    def test_svg_needs_out(self, config_path):
        code = main(["purcell-sweep", "--config", str(config_path("fig09a_purcell_pump.ini")), "--svg"])
        assert code == EXIT_CONFIG

    def test_unknown_log_level(self, config_path):
        code = main(["purcell-sweep", "--config", str(config_path("fig09a_purcell_pump.ini")),
                     "--log-level", "LOUD"])
        assert code == EXIT_CONFIG

    def test_validate_with_missing_table(self, tmp_path):
        assert main(["validate", "--table", str(tmp_path / "missing.csv")]) == EXIT_CONFIG

    @pytest.mark.parametrize("populations", ["0.5, 0.6, 0, 0", "1.5, -0.5, 0, 0"])
    def test_custom_populations_must_be_a_state(self, write_ini, capsys, populations):
        path = write_ini(
            "[system]\ng_ueV = 50\ngamma_over_g = 0.02\nkappa_over_g = 5\n\n"
            f"[hilbert]\nn_max = 1\ninitial_state = custom\npopulations = {populations}\n"
        )

        code = main(["dynamics", "--config", str(path)])

        assert code == EXIT_CONFIG
        assert "[hilbert]" in capsys.readouterr().err

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["fly"])
        assert exc_info.value.code == 2


@pytest.mark.slow
class TestDynamicsCommand:
    """Test suite for the dynamics subcommand."""

    def test_vacuum_rabi_trajectory(self, tmp_path, config_path, capsys):
        out = tmp_path / "rabi.csv"

        # Act
        code = main(["dynamics", "--config", str(config_path("dynamics_vacuum_rabi.ini")),
                     "--out", str(out)])

        # Assert
        assert code == EXIT_OK
        assert "[OK] wrote 301 time points" in capsys.readouterr().out
        result = ResultsRepository().load_sweep(out)
        t = result.column("t_hbar_per_ueV")
        np.testing.assert_allclose(result.column("n_e"), np.cos(50 * t) ** 2, atol=1e-6)
        assert np.all(result.column("trace_err") < 1e-8)

    def test_fit_needs_losses(self, config_path):
        code = main(["dynamics", "--config", str(config_path("dynamics_vacuum_rabi.ini")), "--fit"])
        assert code == EXIT_CONFIG

    def test_adiabatic_fit(self, tmp_path, config_path, capsys):
        code = main(["dynamics", "--config", str(config_path("dynamics_adiabatic.ini")),
                     "--out", str(tmp_path / "decay.csv"), "--fit"])

        assert code == EXIT_OK
        assert "[OK] decay fit" in capsys.readouterr().out


@pytest.mark.slow
class TestValidateCommand:
    """Test suite for the acceptance suite command."""

    def test_all_checks_pass(self, capsys):
        code = main(["validate"])

        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert out.count("CHECK ") == 10
        assert "FAIL" not in out
        assert "[OK] all 10 checks passed" in out

    def test_short_table_reports_failures(self, tmp_path, capsys):
        table = tmp_path / "short.csv"
        table.write_text("T_K,gamma_star_meV\n10,0.01\n80,0.1\n", encoding="utf-8")

        code = main(["validate", "--table", str(table)])

        out = capsys.readouterr().out
        assert code == EXIT_FAILURE
        assert "CHECK r_max_reproduction FAIL error:" in out

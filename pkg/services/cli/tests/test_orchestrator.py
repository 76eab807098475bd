"""Tests for CLIOrchestrator commands and the argparse front end."""

import numpy as np
import pandas as pd
import pytest

from services.cli import (
    EXIT_CONFIG,
    EXIT_NUMERIC,
    EXIT_OK,
    CLIOrchestrator,
)
from services.cli.orchestrator import BOUNDS_COLUMNS, SOLVE_COLUMNS
from services.solver import SolveConfig
from shared.errors import ErrorHandler
from shared.special import gamma_fn

SOURCE_TEXT = "\n".join([
    "kernel = linear",
    "a = 0",
    "b = 1",
    "alpha = 0.5",
    "beta = 0.5",
    "u_a = 1",
    "rhs = power_source",
    "rhs_params = 1, 1",
    "mesh_N = 64",
])


class TestCmdSolve:
    """Tests for cmd_solve()."""

    @pytest.mark.integration
    def test_example5(self, orchestrator, problems_dir, tmp_path, capsys):
        out = tmp_path / "example5.csv"
        code = orchestrator.cmd_solve(problems_dir / "example5.conf", out)

        assert code == EXIT_OK
        with open(out, encoding="utf-8") as f:
            assert f.readline().strip() == ",".join(SOLVE_COLUMNS)
        df = pd.read_csv(out)
        assert len(df) == orchestrator.solve_config.mesh_N + 1
        assert np.isnan(df["u"].iloc[0])
        assert np.isnan(df["F"].iloc[0])
        assert np.isfinite(df["weighted_u"]).all()
        assert "1.044e-01" in capsys.readouterr().out

    def test_zero_source_is_seed(self, orchestrator, write_config, zero_source_text, tmp_path):
        out = tmp_path / "seed.csv"
        code = orchestrator.cmd_solve(write_config(zero_source_text), out)

        assert code == EXIT_OK
        df = pd.read_csv(out)
        assert len(df) == 33
        assert np.allclose(df["weighted_u"], 1.5 / gamma_fn(0.75), rtol=1e-13, atol=0.0)

    def test_default_output_path(self, orchestrator, write_config, zero_source_text):
        path = write_config(zero_source_text, "seed.conf")
        assert orchestrator.cmd_solve(path) == EXIT_OK
        assert (orchestrator.config.results_dir / "seed_solve.csv").exists()

    def test_deterministic_output(self, orchestrator, problems_dir, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        orchestrator.cmd_solve(problems_dir / "implicit.conf", first)
        orchestrator.cmd_solve(problems_dir / "implicit.conf", second)

        assert first.read_bytes() == second.read_bytes()
        assert b"\r\n" not in first.read_bytes()

    def test_mstar_one_is_config_error(self, orchestrator, write_config, zero_source_text, tmp_path, capsys):
        code = orchestrator.cmd_solve(write_config(zero_source_text + "\nM = 0\nMstar = 1\n"))

        assert code == EXIT_CONFIG
        assert "M* < 1" in capsys.readouterr().out
        assert (tmp_path / "errors.json").exists()

    def test_missing_config(self, orchestrator, tmp_path):
        assert orchestrator.cmd_solve(tmp_path / "absent.conf") == EXIT_CONFIG

    def test_non_convergence(self, test_cli_config, problems_dir, tmp_path):
        orchestrator = CLIOrchestrator(
            config=test_cli_config,
            solve_config=SolveConfig(mesh_N=32, picard_max_iters=1),
            error_handler=ErrorHandler("cli", tmp_path / "errors.json"),
        )
        assert orchestrator.cmd_solve(problems_dir / "example5.conf") == EXIT_NUMERIC


class TestCmdVerify:
    """Tests for cmd_verify()."""

    def test_ml(self, orchestrator):
        assert orchestrator.cmd_verify("ml") == EXIT_OK

    def test_unknown_suite(self, orchestrator):
        assert orchestrator.cmd_verify("bogus-suite") == EXIT_CONFIG


@pytest.mark.integration
class TestCmdBounds:
    """Tests for cmd_bounds()."""

    def test_data_zero_delta(self, orchestrator, problems_dir, tmp_path):
        out = tmp_path / "bounds.csv"
        code = orchestrator.cmd_bounds(problems_dir / "linear.conf", "data", delta=0.0, out=out)

        assert code == EXIT_OK
        with open(out, encoding="utf-8") as f:
            assert f.readline().strip() == ",".join(BOUNDS_COLUMNS)
        df = pd.read_csv(out)
        assert (df["diff"] <= 2e-10).all()
        assert (df["margin"] >= 0.0).all()

    def test_order_mode_without_lipschitz(self, orchestrator, write_config, tmp_path):
        out = tmp_path / "order.csv"
        code = orchestrator.cmd_bounds(write_config(SOURCE_TEXT), "order", eps=0.1, out=out)

        assert code in (EXIT_OK, EXIT_NUMERIC)
        df = pd.read_csv(out)
        assert list(df.columns) == [*BOUNDS_COLUMNS, "A"]
        assert np.array_equal(df["bound"].to_numpy(), df["A"].to_numpy())

    def test_understated_lipschitz_is_config_error(self, orchestrator, write_config, tmp_path, capsys):
        # f = 0.5·u declared with M = 0.01 would otherwise give a violated bound
        text = "\n".join([
            "kernel = linear", "a = 0", "b = 1", "alpha = 0.3", "beta = 0.9", "u_a = 1",
            "rhs = linear_in_u", "rhs_params = 0.5", "M = 0.01", "mesh_N = 64",
        ])
        code = orchestrator.cmd_bounds(write_config(text), "data", delta=0.01, out=tmp_path / "b.csv")

        assert code == EXIT_CONFIG
        assert "below the Lipschitz constant" in capsys.readouterr().out
        assert not (tmp_path / "b.csv").exists()

    def test_order_mode_needs_eps(self, orchestrator, problems_dir):
        assert orchestrator.cmd_bounds(problems_dir / "linear.conf", "order") == EXIT_CONFIG

    def test_unknown_mode(self, orchestrator, problems_dir):
        assert orchestrator.cmd_bounds(problems_dir / "linear.conf", "both", delta=0.1) == EXIT_CONFIG


@pytest.mark.integration
class TestCmdDemo:
    """Tests for cmd_demo()."""

    def test_demo(self, orchestrator, capsys):
        assert orchestrator.cmd_demo() == EXIT_OK

        out = capsys.readouterr().out
        assert "η_0 = 0.1044" in out
        assert "condition (t1) holds" in out
        assert "for all t in [0, 1]" in out


class TestMain:
    """Tests for the argparse front end."""

    def test_parser_bounds(self):
        from cli import build_parser

        args = build_parser().parse_args(["bounds", "x.conf", "--mode=data", "--delta=0.01"])
        assert args.command == "bounds"
        assert args.mode == "data"
        assert args.delta == 0.01
        assert args.eps is None

    def test_parser_requires_command(self):
        from cli import build_parser

        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_main_verify_ml(self, monkeypatch, tmp_path):
        import cli

        monkeypatch.chdir(tmp_path)
        assert cli.main(["verify", "ml"]) == EXIT_OK
        assert cli.main(["verify", "bogus-suite"]) == EXIT_CONFIG

    def test_build_orchestrator_uses_special_settings(self, monkeypatch, tmp_path):
        import cli
        from config import settings
        from shared.special import MlSeriesPolicy

        monkeypatch.chdir(tmp_path)
        orchestrator = cli.build_orchestrator()
        expected = MlSeriesPolicy.from_settings(settings["special"])

        assert orchestrator.solve_config.ml_policy == expected
        assert orchestrator.verify_config.ml_policy == expected
        assert orchestrator.bounds_config.ml_policy == expected

"""Unit tests for CLI service configuration and run-config parsing."""

from pathlib import Path

import pytest

from services.cli import (
    CLIServiceConfig,
    DisplayConfig,
    RunConfig,
    get_default_config,
    get_verbose_config,
)
from services.solver import SolveConfig, solve_cauchy
from shared.errors import ConfigNotFoundError, ConfigValidationError

MINIMAL = """
kernel = linear
a = 0
b = 1
alpha = 0.5
beta = 1
u_a = 1
rhs = linear_in_u
rhs_params = 0.5
"""


class TestCLIServiceConfig:
    """Tests for CLIServiceConfig dataclass."""

    def test_default_values(self):
        config = get_default_config()

        assert isinstance(config, CLIServiceConfig)
        assert config.float_format == "%.17g"
        assert config.margin_slack == 5.0e-4
        assert config.display.use_panels is True

    def test_verbose_config(self):
        assert get_verbose_config().display.verbose is True

    def test_immutable(self):
        config = DisplayConfig()
        with pytest.raises(AttributeError):
            config.verbose = True


class TestRunConfigParse:
    """Tests for RunConfig.parse()."""

    def test_minimal(self):
        run = RunConfig.parse(MINIMAL)

        assert run.kernel == "linear"
        assert run.rhs_params == (0.5,)
        assert run.M is None
        assert run.mesh_N is None

    def test_comments_and_blank_lines(self):
        text = "# header\n\n" + MINIMAL.replace("u_a = 1", "u_a = 2  # trailing")
        assert RunConfig.parse(text).u_a == 2.0

    def test_comma_separated_params(self):
        run = RunConfig.parse(MINIMAL.replace("linear_in_u", "power_source").replace("rhs_params = 0.5", "rhs_params = 2, 0.75"))
        assert run.rhs_params == (2.0, 0.75)

    def test_unknown_key(self):
        with pytest.raises(ConfigValidationError) as exc:
            RunConfig.parse(MINIMAL + "lambda = 3\n")

        assert exc.value.context["field"] == "lambda"
        assert exc.value.context["line"] == 10

    def test_duplicate_key(self):
        with pytest.raises(ConfigValidationError) as exc:
            RunConfig.parse(MINIMAL + "alpha = 0.3\n")

        assert exc.value.context["field"] == "alpha"

    def test_malformed_line(self):
        with pytest.raises(ConfigValidationError) as exc:
            RunConfig.parse("kernel linear\n")

        assert exc.value.context["line"] == 1

    def test_bad_number(self):
        with pytest.raises(ConfigValidationError) as exc:
            RunConfig.parse(MINIMAL.replace("alpha = 0.5", "alpha = half"))

        assert exc.value.context["field"] == "alpha"

    def test_missing_required(self):
        with pytest.raises(ConfigValidationError) as exc:
            RunConfig.parse("kernel = linear\n")

        assert "a" in exc.value.context["missing"]

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigNotFoundError):
            RunConfig.from_file(tmp_path / "absent.conf")

    def test_builtin_configs_parse(self, problems_dir):
        for path in sorted(problems_dir.glob("*.conf")):
            problem = RunConfig.from_file(path).to_problem()
            assert problem.kernel.a == 0.0


@pytest.mark.integration
class TestBuiltinContraction:
    """Picard differences on every builtin config shrink at least by η per sweep."""

    @pytest.mark.parametrize("name", ["example5", "implicit", "linear", "power"])
    def test_contraction_law(self, problems_dir, name):
        run = RunConfig.from_file(problems_dir / f"{name}.conf")
        report = solve_cauchy(run.to_problem(), run.to_solve_config(SolveConfig(mesh_N=128)))

        partition = report.partition
        assert len(report.residual_history) == partition.K
        assert all(eta < 1.0 for eta in partition.contraction_constants)
        for eta, history in zip(partition.contraction_constants, report.residual_history):
            for prev, cur in zip(history, history[1:]):
                if prev > 1e-9:
                    assert cur <= 1.1 * eta * prev + 1e-11


class TestRunConfigProblem:
    """Tests for RunConfig.to_problem() and to_solve_config()."""

    def test_example5_constants_filled(self, problems_dir):
        problem = RunConfig.from_file(problems_dir / "example5.conf").to_problem()

        assert problem.lipschitz_M == pytest.approx(0.1)
        assert problem.lipschitz_Mstar == pytest.approx(0.1)
        assert problem.gamma == pytest.approx(2.0 / 3.0)

    def test_mstar_one_rejected(self):
        run = RunConfig.parse(MINIMAL + "M = 0.5\nMstar = 1\n")
        with pytest.raises(ConfigValidationError) as exc:
            run.to_problem()

        assert exc.value.context["field"] == "Mstar"
        assert "M* < 1" in exc.value.message

    def test_unknown_kernel(self):
        run = RunConfig.parse(MINIMAL.replace("kernel = linear", "kernel = cubic"))
        with pytest.raises(ConfigValidationError) as exc:
            run.to_problem()

        assert exc.value.context["field"] == "kernel"

    def test_invalid_order(self):
        run = RunConfig.parse(MINIMAL.replace("alpha = 0.5", "alpha = 1.5"))
        with pytest.raises(ConfigValidationError) as exc:
            run.to_problem()

        assert exc.value.context["field"] == "alpha"

    def test_custom_callback_rejected(self):
        run = RunConfig.parse(MINIMAL.replace("linear_in_u", "custom_callback").replace("rhs_params = 0.5\n", ""))
        with pytest.raises(ConfigValidationError):
            run.to_problem()

    def test_solve_config_overrides(self):
        run = RunConfig.parse(MINIMAL + "mesh_N = 64\npicard_tol = 1e-8\n")
        cfg = run.to_solve_config(SolveConfig(picard_max_iters=50))

        assert cfg.mesh_N == 64
        assert cfg.picard_tol == 1e-8
        assert cfg.picard_max_iters == 50
        assert cfg.grading_r is None

    def test_invalid_mesh_size(self):
        with pytest.raises(ConfigValidationError):
            RunConfig.parse(MINIMAL + "mesh_N = 1\n").to_solve_config()

    def test_output_path(self, tmp_path):
        run = RunConfig.parse(MINIMAL, source=str(tmp_path / "decay.conf"))
        assert run.output_path(Path("results"), "solve") == Path("results/decay_solve.csv")

        explicit = RunConfig.parse(MINIMAL + "out = out/u.csv\n")
        assert explicit.output_path(Path("results"), "solve") == Path("out/u.csv")


class TestSettings:
    """Tests for settings.yaml loading."""

    def test_blocks_present(self):
        from config import load_settings

        settings = load_settings()
        assert {"logging", "errors", "special", "solver", "verify", "bounds"} <= set(settings)

    def test_empty_file(self, tmp_path):
        from config import load_settings

        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_settings(path) == {}

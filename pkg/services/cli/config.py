"""Configuration for the CLI orchestrator service and run-config parsing.

Run configurations are flat text files, one `key = value` per line:

    # ψ = √(t+1), f = 1/((1 + 9e^t)(1 + |u| + |v|))
    kernel = sqrt_shift
    a = 0
    b = 1
    alpha = 0.5
    beta = 0.333333333333333333
    u_a = 1
    rhs = example5

`rhs_params` is comma-separated. M and Mstar may be omitted for builtin
right-hand sides, whose exact constants are filled in.
"""

import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

from shared.errors import (
    ConfigNotFoundError,
    ConfigValidationError,
    KernelError,
    OrderError,
    ProblemError,
)
from shared.models import FractionalOrder, ProblemSpec, RhsSpec, builtin_kernels
from services.solver import SolveConfig


@dataclass(frozen=True)
class DisplayConfig:
    """Configuration for CLI display.

    Attributes:
        use_panels: Whether to use rich panels for headers
        verbose: Whether to print per-sweep residual histories in full
        history_rows: Sweeps shown per subinterval when not verbose
    """
    use_panels: bool = True
    verbose: bool = False
    history_rows: int = 8


@dataclass(frozen=True)
class CLIServiceConfig:
    """Main configuration for the CLI orchestrator service.

    Attributes:
        display: Display settings
        results_dir: Directory for CSV output when a config names no `out`
        float_format: printf format for CSV numbers
        margin_slack: Tolerated negative margin at interior nodes
    """
    display: DisplayConfig = field(default_factory=DisplayConfig)
    results_dir: Path = Path("results")
    float_format: str = "%.17g"
    margin_slack: float = 5.0e-4


def get_default_config() -> CLIServiceConfig:
    """Get default CLI service configuration.

    Returns:
        CLIServiceConfig with default settings
    """
    return CLIServiceConfig()


def get_verbose_config() -> CLIServiceConfig:
    """Get configuration for verbose output.

    Returns:
        CLIServiceConfig with full residual histories
    """
    return CLIServiceConfig(display=DisplayConfig(verbose=True))


_FLOAT_KEYS = ("a", "b", "alpha", "beta", "u_a", "M", "Mstar", "grading_r", "picard_tol")
_INT_KEYS = ("mesh_N",)
_LIST_KEYS = ("rhs_params",)
_REQUIRED = ("kernel", "a", "b", "alpha", "beta", "u_a", "rhs")


def _parse_value(key: str, raw: str, line_no: int, source: str):
    try:
        if key in _FLOAT_KEYS:
            value = float(raw)
            if not math.isfinite(value):
                raise ValueError(raw)
            return value
        if key in _INT_KEYS:
            return int(raw)
        if key in _LIST_KEYS:
            return tuple(float(p) for p in raw.split(",") if p.strip())
    except ValueError:
        raise ConfigValidationError(
            f"{source}:{line_no}: cannot parse '{raw}' for '{key}'",
            context={"line": line_no, "field": key, "value": raw},
        ) from None
    return raw


@dataclass(frozen=True)
class RunConfig:
    """A parsed run configuration.

    Attributes:
        kernel: Builtin kernel name
        a: Left endpoint
        b: Right endpoint
        alpha: Order
        beta: Type
        u_a: Initial value I^{1-γ}u(a)
        rhs: Builtin right-hand side kind
        rhs_params: Parameters of the right-hand side
        M: Lipschitz constant in u (exact value for builtins when None)
        Mstar: Lipschitz constant in v
        mesh_N: Mesh intervals per subinterval (solver default when None)
        grading_r: First-subinterval grading (max(1, 2/γ) when None)
        picard_tol: Picard tolerance (solver default when None)
        out: Output CSV path
        source: Where the config was read from
    """
    kernel: str
    a: float
    b: float
    alpha: float
    beta: float
    u_a: float
    rhs: str
    rhs_params: tuple[float, ...] = ()
    M: Optional[float] = None
    Mstar: Optional[float] = None
    mesh_N: Optional[int] = None
    grading_r: Optional[float] = None
    picard_tol: Optional[float] = None
    out: Optional[str] = None
    source: str = "<string>"

    @classmethod
    def keys(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls) if f.name != "source")

    @classmethod
    def parse(cls, text: str, source: str = "<string>") -> "RunConfig":
        """Parse `key = value` lines.

        Raises:
            ConfigValidationError: On malformed lines, unknown or duplicate keys,
                unparseable values and missing required keys
        """
        known = cls.keys()
        values: dict = {}
        for line_no, line in enumerate(text.splitlines(), start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ConfigValidationError(
                    f"{source}:{line_no}: expected 'key = value'",
                    context={"line": line_no, "field": None, "text": line},
                )
            key, raw = (part.strip() for part in stripped.split("=", 1))
            if key not in known:
                raise ConfigValidationError(
                    f"{source}:{line_no}: unknown key '{key}'",
                    context={"line": line_no, "field": key, "known": list(known)},
                )
            if key in values:
                raise ConfigValidationError(
                    f"{source}:{line_no}: duplicate key '{key}'",
                    context={"line": line_no, "field": key},
                )
            values[key] = _parse_value(key, raw, line_no, source)

        missing = [key for key in _REQUIRED if key not in values]
        if missing:
            raise ConfigValidationError(
                f"{source}: missing required key(s) {', '.join(missing)}",
                context={"line": None, "field": missing[0], "missing": missing},
            )
        return cls(source=source, **values)

    @classmethod
    def from_file(cls, path: Path) -> "RunConfig":
        """Read and parse a config file.

        Raises:
            ConfigNotFoundError: If the file does not exist
        """
        path = Path(path)
        if not path.is_file():
            raise ConfigNotFoundError(f"Config file not found: {path}", {"path": str(path)})
        return cls.parse(path.read_text(encoding="utf-8"), source=str(path))

    def to_problem(self) -> ProblemSpec:
        """Build the Cauchy problem.

        Raises:
            ConfigValidationError: If the kernel, order or right-hand side is invalid
        """
        if self.rhs == "custom_callback":
            raise ConfigValidationError(
                f"{self.source}: rhs 'custom_callback' is only available from Python",
                context={"line": None, "field": "rhs"},
            )
        try:
            return ProblemSpec(
                order=FractionalOrder(alpha=self.alpha, beta=self.beta),
                kernel=builtin_kernels(self.kernel, self.a, self.b),
                u_a=self.u_a,
                rhs=RhsSpec(self.rhs, self.rhs_params),
                lipschitz_M=self.M,
                lipschitz_Mstar=self.Mstar,
            )
        except (KernelError, OrderError, ProblemError) as e:
            raise ConfigValidationError(
                f"{self.source}: {e.message}",
                context={**e.context, "line": None, "field": _field_for(e)},
            ) from e

    def to_solve_config(self, base: Optional[SolveConfig] = None) -> SolveConfig:
        """Solver settings with this config's overrides applied to `base`."""
        base = base or SolveConfig()
        overrides = {
            "mesh_N": self.mesh_N,
            "grading_r": self.grading_r,
            "picard_tol": self.picard_tol,
        }
        values = {f.name: getattr(base, f.name) for f in fields(base)}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return SolveConfig(**values)

    def output_path(self, results_dir: Path, suffix: str) -> Path:
        """`out` when set, otherwise results_dir/<config stem>_<suffix>.csv."""
        if self.out:
            return Path(self.out)
        stem = Path(self.source).stem if self.source != "<string>" else "run"
        return Path(results_dir) / f"{stem}_{suffix}.csv"


def _field_for(error: Exception) -> str:
    if isinstance(error, KernelError):
        return "kernel"
    if isinstance(error, OrderError):
        return "alpha" if "alpha" in error.context else "beta"
    context = getattr(error, "context", {})
    if "Mstar" in context:
        return "Mstar"
    if "M" in context:
        return "M"
    if "u_a" in context:
        return "u_a"
    return "rhs"

"""errors.json recording for failed commands.

A failure is written to errors.json with its type, message and merged
context (mesh size, problem data, last residual, ...), then re-raised so the
CLI can choose an exit code. Services wrap their own work and the CLI wraps
whole commands with the same handler; when an error passes through several
wraps it is logged once and the file is rewritten with the union of all
contexts, outermost keys last.
"""

import json
import traceback
from datetime import datetime
from pathlib import Path
from typing import Any, NoReturn

from shared.errors.exceptions import HilferError, NonConvergence
from shared.logging.logger import get_logger

# Context accumulated on an exception by the wraps it has passed through
_CONTEXT_ATTR = "_recorded_context"


class ErrorHandler:
    """Logs failures, writes errors.json and re-raises.

    Example:
        handler = ErrorHandler(service_name="cli")

        with handler.wrap(context={"command": "solve", "config": "example5.conf"}):
            SolverService(cfg, handler).solve(problem)
    """

    def __init__(
        self,
        service_name: str,
        error_file: Path | str = "errors.json",
        include_traceback: bool = True,
    ):
        """
        Args:
            service_name: Logger to report to
            error_file: Path of the JSON record (overwritten on every failure)
            include_traceback: Whether the record carries the formatted traceback
        """
        self.service_name = service_name
        self.error_file = Path(error_file)
        self.include_traceback = include_traceback
        self.logger = get_logger(service_name)

    def record(self, error: BaseException, context: dict[str, Any] | None = None) -> dict[str, Any]:
        """Build the errors.json payload for error and write it.

        Returns:
            The payload that was written
        """
        seen = getattr(error, _CONTEXT_ATTR, None)
        merged: dict[str, Any] = {}
        if isinstance(error, HilferError):
            merged.update(error.context)
        merged.update(seen or {})
        merged.update(context or {})
        try:
            setattr(error, _CONTEXT_ATTR, merged)
        except AttributeError:
            pass

        payload: dict[str, Any] = {
            "timestamp": datetime.now().isoformat(),
            "service": self.service_name,
            "error_type": type(error).__name__,
            "error_class": f"{type(error).__module__}.{type(error).__name__}",
            "message": str(error),
            "context": {key: _jsonable(value) for key, value in merged.items()},
        }
        if isinstance(error, NonConvergence) and error.residual is not None:
            payload["residual"] = float(error.residual)
        if self.include_traceback:
            payload["traceback"] = "".join(
                traceback.format_exception(type(error), error, error.__traceback__)
            )

        if seen is None:
            self.logger.error(f"{payload['error_type']}: {payload['message']}")
            self.logger.debug("Traceback", exc_info=error)
        else:
            self.logger.debug(f"{payload['error_type']} passed through {sorted(context or {})}")
        self._write(payload)
        return payload

    def handle(self, error: Exception, context: dict[str, Any] | None = None) -> NoReturn:
        """Record error, then re-raise it."""
        self.record(error, context)
        raise error

    def _write(self, payload: dict[str, Any]) -> None:
        try:
            self.error_file.write_text(json.dumps(payload, indent=2, ensure_ascii=False), encoding="utf-8")
        except OSError as write_error:
            self.logger.error(f"Could not write {self.error_file}: {write_error}")

    def wrap(self, context: dict[str, Any] | None = None) -> "_Recording":
        """Context manager that records any exception leaving the block."""
        return _Recording(self, context)


class _Recording:
    def __init__(self, handler: ErrorHandler, context: dict[str, Any] | None):
        self.handler = handler
        self.context = context

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_val is not None and isinstance(exc_val, Exception):
            self.handler.record(exc_val, self.context)
        return False


def _jsonable(value: Any) -> Any:
    """numpy scalars and arrays become Python values, anything else unknown a string."""
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


def create_error_handler(service_name: str) -> ErrorHandler:
    """ErrorHandler using the `errors` block of settings.yaml."""
    from config import settings

    errors = settings.get("errors", {})
    return ErrorHandler(
        service_name=service_name,
        error_file=errors.get("output_file", "errors.json"),
        include_traceback=errors.get("include_traceback", True),
    )

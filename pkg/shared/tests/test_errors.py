"""Tests for the exception hierarchy and errors.json recording."""

import json
import logging

import numpy as np
import pytest

from shared.errors import (
    ConfigError,
    ConfigValidationError,
    ErrorHandler,
    HilferError,
    NonConvergence,
    UnknownKernel,
)


class TestExceptions:
    """Tests for HilferError and its families."""

    def test_context_defaults_to_empty(self):
        error = HilferError("boom")

        assert error.message == "boom"
        assert error.context == {}
        assert str(error) == "boom"

    def test_families(self):
        assert issubclass(ConfigValidationError, ConfigError)
        assert issubclass(UnknownKernel, HilferError)

    def test_non_convergence_carries_residual(self):
        error = NonConvergence("stalled", {"iterations": 3}, report="partial", residual=1e-3)

        assert error.report == "partial"
        assert error.residual == 1e-3
        assert error.context["iterations"] == 3


class TestErrorHandler:
    """Tests for ErrorHandler."""

    def test_handle_writes_and_reraises(self, clean_error_file):
        handler = ErrorHandler("test", clean_error_file)
        error = ConfigValidationError("bad value", {"line": 3, "field": "alpha"})

        with pytest.raises(ConfigValidationError):
            handler.handle(error, context={"config": "run.conf"})

        data = json.loads(clean_error_file.read_text())
        assert data["service"] == "test"
        assert data["error_type"] == "ConfigValidationError"
        assert data["message"] == "bad value"
        assert data["context"] == {"line": 3, "field": "alpha", "config": "run.conf"}
        assert "traceback" in data

    def test_numpy_context_serialised(self, clean_error_file):
        handler = ErrorHandler("test", clean_error_file, include_traceback=False)
        error = HilferError("residual", {"residual": np.float64(0.5), "nodes": np.int64(4), "shape": (2, 3)})

        with pytest.raises(HilferError):
            handler.handle(error)

        data = json.loads(clean_error_file.read_text())
        assert data["context"] == {"residual": 0.5, "nodes": 4, "shape": [2, 3]}
        assert "traceback" not in data

    def test_file_overwritten(self, clean_error_file):
        handler = ErrorHandler("test", clean_error_file)
        for message in ("first", "second"):
            with pytest.raises(HilferError):
                handler.handle(HilferError(message))

        assert json.loads(clean_error_file.read_text())["message"] == "second"

    def test_wrap(self, clean_error_file):
        handler = ErrorHandler("test", clean_error_file)

        with pytest.raises(ValueError):
            with handler.wrap(context={"command": "solve"}):
                raise ValueError("plain")

        data = json.loads(clean_error_file.read_text())
        assert data["error_type"] == "ValueError"
        assert data["context"] == {"command": "solve"}

    def test_wrap_without_error(self, clean_error_file):
        with ErrorHandler("test", clean_error_file).wrap():
            pass

        assert not clean_error_file.exists()

    def test_nested_wraps_merge_context(self, clean_error_file):
        handler = ErrorHandler("test", clean_error_file)

        with pytest.raises(NonConvergence):
            with handler.wrap(context={"command": "solve"}):
                with handler.wrap(context={"mesh_N": 64}):
                    raise NonConvergence("stalled", {"iterations": 200}, residual=2.5e-6)

        data = json.loads(clean_error_file.read_text())
        assert data["context"] == {"iterations": 200, "mesh_N": 64, "command": "solve"}
        assert data["residual"] == 2.5e-6

    def test_array_context(self, clean_error_file):
        handler = ErrorHandler("test", clean_error_file, include_traceback=False)
        handler.record(HilferError("shape", {"nodes": np.array([0.0, 0.5])}))

        assert json.loads(clean_error_file.read_text())["context"] == {"nodes": [0.0, 0.5]}

    def test_traceback_logged_at_debug_only(self, clean_error_file, caplog):
        handler = ErrorHandler("test", clean_error_file, include_traceback=False)
        caplog.set_level(logging.DEBUG, logger=handler.logger.name)

        try:
            raise HilferError("boom")
        except HilferError as e:
            handler.record(e)

        errors = [r for r in caplog.records if r.levelno == logging.ERROR]
        debug = [r for r in caplog.records if r.levelno == logging.DEBUG]
        assert len(errors) == 1
        assert errors[0].getMessage() == "HilferError: boom"
        assert errors[0].exc_info is None
        assert any(r.exc_info and r.exc_info[0] is HilferError for r in debug)

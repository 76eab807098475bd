"""Per-service rotating log files.

Every service (calculus, solver, bounds, cli, special) logs to
logs/<service>.log under the `hilfer.` logger namespace. Records at or above
the console level are echoed to stderr; `-v` on the CLI lowers that level so
partition summaries and sweep residuals show up while a solve runs.
"""

import logging
from dataclasses import dataclass, replace
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict

NAMESPACE = "hilfer"


def _level(value: int | str) -> int:
    if isinstance(value, str):
        return logging.getLevelName(value.upper())
    return int(value)


@dataclass(frozen=True)
class LogSettings:
    """Handler settings shared by every service logger.

    Attributes:
        directory: Where <service>.log files are written
        format: Record format
        date_format: asctime format
        max_bytes: Rotation size
        backup_count: Rotated files kept
        level: Level of the service loggers and their files
        console_level: Level from which records are echoed to stderr
    """
    directory: Path = Path("logs")
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    date_format: str = "%Y-%m-%d %H:%M:%S"
    max_bytes: int = 10 * 1024 * 1024
    backup_count: int = 5
    level: int = logging.INFO
    console_level: int = logging.ERROR

    @classmethod
    def from_dict(cls, block: Dict[str, Any], base: "LogSettings | None" = None) -> "LogSettings":
        """Overlay the `logging` block of settings.yaml on base (or the defaults)."""
        settings = base or cls()
        updates: Dict[str, Any] = {}
        if block.get("directory") is not None:
            updates["directory"] = Path(block["directory"])
        for key in ("format", "date_format"):
            if block.get(key) is not None:
                updates[key] = str(block[key])
        for key in ("max_bytes", "backup_count"):
            if block.get(key) is not None:
                updates[key] = int(block[key])
        for key in ("level", "console_level"):
            if block.get(key) is not None:
                updates[key] = _level(block[key])
        return replace(settings, **updates)


class LoggerFactory:
    """Creates and caches one logger per service.

    Example:
        LoggerFactory.configure_from_settings(settings["logging"])
        logger = LoggerFactory.get_logger("solver")
        logger.info("Partition: 1 interval, eta_0 = 0.1044")
    """

    _loggers: Dict[str, logging.Logger] = {}
    _settings: LogSettings = LogSettings()

    @classmethod
    def configure(
        cls,
        logs_dir: Path | str | None = None,
        log_level: int | str | None = None,
        console_level: int | str | None = None,
        **options: Any,
    ) -> None:
        """Change settings for loggers created from now on.

        Args:
            logs_dir: Directory for log files
            log_level: Service logger level, as int or name ("DEBUG", "INFO", ...)
            console_level: stderr echo level
            **options: format, date_format, max_bytes or backup_count
        """
        cls._settings = LogSettings.from_dict(
            {"directory": logs_dir, "level": log_level, "console_level": console_level, **options},
            base=cls._settings,
        )

    @classmethod
    def configure_from_settings(cls, logging_settings: Dict[str, Any]) -> None:
        """Configure from the `logging` block of settings.yaml."""
        cls._settings = LogSettings.from_dict(logging_settings, base=cls._settings)

    @classmethod
    def set_console_level(cls, level: int | str) -> None:
        """Change the stderr echo level of existing and future loggers."""
        cls._settings = replace(cls._settings, console_level=_level(level))
        for logger in cls._loggers.values():
            for handler in logger.handlers:
                if not isinstance(handler, RotatingFileHandler):
                    handler.setLevel(cls._settings.console_level)

    @classmethod
    def get_logger(cls, service_name: str) -> logging.Logger:
        """Logger `hilfer.<service_name>` writing to <directory>/<service_name>.log."""
        if service_name in cls._loggers:
            return cls._loggers[service_name]

        s = cls._settings
        logger = logging.getLogger(f"{NAMESPACE}.{service_name}")
        logger.setLevel(s.level)

        if not logger.handlers:
            s.directory.mkdir(parents=True, exist_ok=True)
            formatter = logging.Formatter(s.format, s.date_format)

            file_handler = RotatingFileHandler(
                s.directory / f"{service_name}.log",
                maxBytes=s.max_bytes,
                backupCount=s.backup_count,
                encoding="utf-8",
            )
            file_handler.setLevel(s.level)
            file_handler.setFormatter(formatter)

            console_handler = logging.StreamHandler()
            console_handler.setLevel(s.console_level)
            console_handler.setFormatter(formatter)

            logger.addHandler(file_handler)
            logger.addHandler(console_handler)

        cls._loggers[service_name] = logger
        return logger

    @classmethod
    def reset(cls) -> None:
        """Close and drop every cached logger (used between tests)."""
        for logger in cls._loggers.values():
            for handler in logger.handlers[:]:
                handler.close()
                logger.removeHandler(handler)
        cls._loggers.clear()


def get_logger(service_name: str) -> logging.Logger:
    """Shorthand for LoggerFactory.get_logger()."""
    return LoggerFactory.get_logger(service_name)

"""Per-service logging infrastructure.

Each service gets its own log file in the logs/ directory.

Example:
    from shared.logging import get_logger

    logger = get_logger("solver")
    logger.info("Sweep 3: residual 1.2e-07")
    logger.error("Inner fixed point diverged", exc_info=True)
"""

from shared.logging.logger import LoggerFactory, LogSettings, get_logger

__all__ = ["LoggerFactory", "LogSettings", "get_logger"]

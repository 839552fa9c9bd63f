"""
Logging for workprobe.

Example:
    from workprobe.logging import get_logger

    logger = get_logger(__name__)
    logger.info("Building Hamiltonians")
    logger.warning("Displacement leaks onto the top Fock level")
    logger.error("Check failed", exc_info=True)
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.theme import Theme

PROBE_THEME = Theme({
    "log.time": "dim cyan",
    "log.level.debug": "dim blue",
    "log.level.info": "green",
    "log.level.warning": "yellow",
    "log.level.error": "bold red",
    "log.level.critical": "bold white on red",
    "probe.success": "bold green",
    "probe.pass": "green",
    "probe.fail": "bold red",
    "probe.info": "cyan",
})

# Diagnostics go to stderr so CSV/JSON on stdout stays clean
console = Console(theme=PROBE_THEME, stderr=True)

_initialized = False


def setup_logging(
    level: str = "INFO",
    show_time: bool = True,
    show_path: bool = False,
    rich_tracebacks: bool = True,
) -> None:
    """
    init workprobe's logging

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        show_time: Show timestamps in log output
        show_path: Show file path in log output
        rich_tracebacks: Use rich formatting for tracebacks

    Note:
        Call once at startup. Later calls are ignored unless ``force`` semantics
        are needed, in which case call :func:`reset_logging` first.
    """
    global _initialized

    if _initialized:
        return

    numeric_level = getattr(logging, level.upper(), logging.INFO)

    handler = RichHandler(
        console=console,
        show_time=show_time,
        show_path=show_path,
        rich_tracebacks=rich_tracebacks,
        markup=True,
        tracebacks_show_locals=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))

    logging.basicConfig(
        level=numeric_level,
        handlers=[handler],
        force=True,
    )

    _initialized = True


def reset_logging() -> None:
    """Allow the next setup_logging() call to reconfigure handlers (CLI runs, tests)."""
    global _initialized
    _initialized = False


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a given module.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Logger instance
    """
    if not _initialized:
        setup_logging()

    return logging.getLogger(name)


class ProbeLogger:
    """
    workprobe-specific logger

    Wraps a standard logger with helpers for verification output.
    """

    def __init__(self, name: str):
        self.logger = get_logger(name)
        self.console = console

    def debug(self, message: str, **kwargs) -> None:
        """Log debug message."""
        self.logger.debug(message, **kwargs)

    def info(self, message: str, **kwargs) -> None:
        """Log info message."""
        self.logger.info(message, **kwargs)

    def warning(self, message: str, **kwargs) -> None:
        """Log warning message."""
        self.logger.warning(message, **kwargs)

    def error(self, message: str, **kwargs) -> None:
        """Log error message."""
        self.logger.error(message, **kwargs)

    def success(self, message: str) -> None:
        """
        Log success message with special formatting.

        Args:
            message: Success message to display
        """
        self.console.print(f"[probe.success]✓[/probe.success] {message}")

    def check_result(
        self,
        name: str,
        residual: float,
        tolerance: float,
        passed: bool,
        duration: Optional[float] = None,
    ) -> None:
        """
        Print one verification line.

        Args:
            name: Check name
            residual: Measured residual
            tolerance: Acceptance tolerance
            passed: Whether residual <= tolerance
            duration: Optional runtime in seconds
        """
        from rich.markup import escape

        style = "probe.pass" if passed else "probe.fail"
        verdict = "PASS" if passed else "FAIL"
        msg = (
            f"[{style}]{verdict}[/{style}] {escape(name):<20} "
            f"residual={residual:.3e}  tol={tolerance:.1e}"
        )
        if duration is not None:
            msg += f" [dim]({duration:.2f}s)[/dim]"
        self.console.print(msg)


def get_probe_logger(name: str) -> ProbeLogger:
    """
    Get a ProbeLogger instance for the given module.

    Args:
        name: Logger name (typically __name__)

    Returns:
        ProbeLogger instance

    Example:
        logger = get_probe_logger(__name__)
        logger.success("All checks passed")
    """
    return ProbeLogger(name)

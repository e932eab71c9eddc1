"""
Logger utility for simulator-wide logging.

ApplicationLogger wraps a standard library logger with a console handler and a dated file
handler. Solver services emit ``event key=value`` lines through ``log_event`` so round traces,
fallback steps and convergence decisions can be grepped from the logs.
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from app.core.config.application_config import LOG_DIR, LOG_LEVEL, LOG_TO_FILE

_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def _render(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_render(item) for item in value) + "]"
    return str(value)


class ApplicationLogger:
    """
    Console and file logging for the simulator services.

    Attributes:
        logger (logging.Logger): The underlying logger; handlers are attached once per name.
        context (Dict[str, Any]): Fields prepended to every structured event.
    """

    def __init__(
        self,
        name: str = "simulator",
        logger_level: Optional[int] = None,
        log_to_console: bool = True,
        log_to_file: bool = LOG_TO_FILE,
        log_dir: str = LOG_DIR,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        """
        Args:
            name (str): Logger name, usually the module's ``__name__``.
            logger_level (Optional[int]): Level; the configured LOG_LEVEL when absent.
            log_to_console (bool): Attach a stderr handler.
            log_to_file (bool): Attach a handler writing ``simulator_<yyyymmdd>.log`` under ``log_dir``.
            log_dir (str): Directory for log files.
            context (Optional[Dict[str, Any]]): Fixed fields for ``log_event``.
        """
        level = logger_level if logger_level is not None else logging.getLevelName(LOG_LEVEL)
        if not isinstance(level, int):
            level = logging.INFO
        self.logger: logging.Logger = logging.getLogger(name)
        self.logger.setLevel(level)
        self.context: Dict[str, Any] = dict(context or {})

        if self.logger.handlers:
            return
        formatter = logging.Formatter(_FORMAT, datefmt=_DATE_FORMAT)
        if log_to_console:
            self._attach(logging.StreamHandler(), level, formatter)
        if log_to_file:
            log_path = Path(log_dir)
            log_path.mkdir(parents=True, exist_ok=True)
            log_file = log_path / f"simulator_{datetime.now():%Y%m%d}.log"
            self._attach(logging.FileHandler(log_file, encoding="utf-8"), level, formatter)

    def _attach(self, handler: logging.Handler, level: int, formatter: logging.Formatter) -> None:
        handler.setLevel(level)
        handler.setFormatter(formatter)
        self.logger.addHandler(handler)

    def bind(self, **context: Any) -> "ApplicationLogger":
        """
        Returns a logger sharing the same handlers with extra fixed event fields.

        Example:
            ``_logger.bind(component="WsnSolverService").log_event("fallback", tag=2)``
        """
        bound = object.__new__(ApplicationLogger)
        bound.logger = self.logger
        bound.context = {**self.context, **context}
        return bound

    def log_debug(self, message: str) -> None:
        self.logger.debug(message)

    def log_info(self, message: str) -> None:
        self.logger.info(message)

    def log_warning(self, message: str) -> None:
        self.logger.warning(message)

    def log_error(self, message: str) -> None:
        self.logger.error(message)

    def log_event(self, event: str, level: int = logging.INFO, **fields: Any) -> None:
        """
        Logs ``event key=value ...`` with bound context first, then ``fields`` in call order.

        Floats are rendered with six significant digits.
        """
        if not self.logger.isEnabledFor(level):
            return
        payload = " ".join(f"{key}={_render(value)}" for key, value in {**self.context, **fields}.items())
        self.logger.log(level, f"{event} {payload}".rstrip())

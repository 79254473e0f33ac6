"""
============================================================================
Numeral-MG: Minimalist Grammar Workbench for Numerals
Utterance-meaning learning with merge, move and lambda semantics
============================================================================

MISSION - NEVER TO BE VIOLATED:
    Derive   → Build every numeral through merge and move, nothing else
    Mean     → Keep arithmetic semantics exact through lambda application
    Learn    → Acquire the lexicon from a counting teacher's feedback
    Account  → Record every lexicon change so any run can be replayed

============================================================================
Logging Configuration Manager - Colorized and JSON Logging
----------------------------------------------------------------------------
FILE VERSION: v1.0-3-3.2-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 3 - Configuration & Logging
CLEAN ARCHITECTURE: Compliant
============================================================================

RESPONSIBILITIES:
- Configure the 'numg' application logger from the 'logging' section
- Colorized human format for terminals, JSON for files and pipelines
- Custom SUCCESS level for positive confirmations
- Child loggers per component (numg.transducer, numg.learner, ...)

Log output goes to stderr; stdout is reserved for CLI results.
"""

import json
import logging
import os
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

# Module version
__version__ = "v1.0-3-3.2-1"

# Application logger name
APP_NAME = "numg"


# =============================================================================
# Custom SUCCESS Log Level (between INFO and WARNING)
# =============================================================================
SUCCESS_LEVEL = 25
logging.addLevelName(SUCCESS_LEVEL, "SUCCESS")


def _success(self, message, *args, **kwargs):
    """Log a SUCCESS level message."""
    if self.isEnabledFor(SUCCESS_LEVEL):
        self._log(SUCCESS_LEVEL, message, args, **kwargs)


logging.Logger.success = _success


def _numeric_level(level: str, fallback: int = logging.WARNING) -> int:
    """Resolve a level name (including SUCCESS) to its number."""
    numeric = logging.getLevelName(str(level).upper())
    return numeric if isinstance(numeric, int) else fallback


# =============================================================================
# ANSI Color Codes
# =============================================================================
class Colors:
    """ANSI escape codes for console output, one per level plus layout colors."""

    RESET = "\033[0m"
    DIM = "\033[2m"

    CRITICAL = "\033[1;91m"
    ERROR = "\033[91m"
    WARNING = "\033[93m"
    INFO = "\033[96m"
    DEBUG = "\033[90m"
    SUCCESS = "\033[92m"

    TIMESTAMP = "\033[90m"
    LOGGER_NAME = "\033[94m"


# =============================================================================
# Colorized Formatter
# =============================================================================
class ColorizedFormatter(logging.Formatter):
    """
    Human-readable formatter.

    Format: [TIMESTAMP] LEVEL    | logger_name | symbol message
    """

    LEVEL_COLORS = {
        logging.CRITICAL: Colors.CRITICAL,
        logging.ERROR: Colors.ERROR,
        logging.WARNING: Colors.WARNING,
        logging.INFO: Colors.INFO,
        logging.DEBUG: Colors.DEBUG,
        SUCCESS_LEVEL: Colors.SUCCESS,
    }

    LEVEL_SYMBOLS = {
        logging.CRITICAL: "🚨",
        logging.ERROR: "❌",
        logging.WARNING: "⚠️ ",
        logging.INFO: "ℹ️ ",
        logging.DEBUG: "🔍",
        SUCCESS_LEVEL: "✅",
    }

    def __init__(
        self,
        datefmt: Optional[str] = None,
        use_colors: bool = True,
        use_symbols: bool = True,
    ):
        super().__init__(datefmt=datefmt or "%Y-%m-%d %H:%M:%S")
        self.use_colors = use_colors
        self.use_symbols = use_symbols

    def format(self, record: logging.LogRecord) -> str:
        """Format the record with colors and aligned columns."""
        level_color = self.LEVEL_COLORS.get(record.levelno, Colors.RESET)
        symbol = self.LEVEL_SYMBOLS.get(record.levelno, "") if self.use_symbols else ""

        timestamp = datetime.fromtimestamp(record.created).strftime(self.datefmt)
        level_name = record.levelname.ljust(8)

        logger_name = record.name
        if len(logger_name) > 25:
            logger_name = "..." + logger_name[-22:]
        logger_name = logger_name.ljust(25)

        message = record.getMessage()

        if self.use_colors:
            formatted = (
                f"{Colors.TIMESTAMP}[{timestamp}]{Colors.RESET} "
                f"{level_color}{level_name}{Colors.RESET} "
                f"{Colors.DIM}|{Colors.RESET} "
                f"{Colors.LOGGER_NAME}{logger_name}{Colors.RESET} "
                f"{Colors.DIM}|{Colors.RESET} "
                f"{symbol} {level_color}{message}{Colors.RESET}"
            )
        else:
            formatted = f"[{timestamp}] {level_name} | {logger_name} | {symbol} {message}"

        if record.exc_info:
            exc_text = self.formatException(record.exc_info)
            formatted += f"\n{Colors.ERROR}{exc_text}{Colors.RESET}" if self.use_colors else f"\n{exc_text}"

        return formatted


# =============================================================================
# JSON Formatter
# =============================================================================
class JSONFormatter(logging.Formatter):
    """One JSON object per record, for log files and aggregation."""

    def format(self, record: logging.LogRecord) -> str:
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_data, ensure_ascii=False)


# =============================================================================
# Logging Configuration Manager
# =============================================================================
class LoggingConfigManager:
    """
    Configures the application logger and hands out child loggers.

    Example:
        >>> logging_manager = create_logging_config_manager(config_manager)
        >>> logger = logging_manager.get_logger("learner")
        >>> logger.success("Trained 99 numerals")
    """

    def __init__(
        self,
        config_manager: Optional[Any] = None,
        log_level: Optional[str] = None,
        log_format: str = "human",
        log_file: Optional[str] = None,
        console_output: bool = True,
        app_name: str = APP_NAME,
    ):
        """
        Initialize the LoggingConfigManager (use create_logging_config_manager() instead).

        Args:
            config_manager: ConfigManager instance for loading settings
            log_level: Level override; wins over the configured level
            log_format: 'human' for colorized, 'json' for structured
            log_file: Path to a JSON log file (optional)
            console_output: Whether to log to stderr
            app_name: Application logger name
        """
        self._config_manager = config_manager
        self._log_level = "WARNING"
        self._log_format = log_format
        self._log_file = log_file
        self._console_output = console_output
        self._app_name = app_name

        if config_manager:
            self._load_from_config()

        if log_level:
            self._log_level = log_level.upper()

        self._configured_loggers: Dict[str, logging.Logger] = {}

        self._configure_root_logger()

        self._logger = self.get_logger("logging")
        self._logger.debug(f"LoggingConfigManager {__version__} initialized")
        self._logger.debug(f"Log level: {self._log_level}, Format: {self._log_format}")

    def _load_from_config(self) -> None:
        """Load settings from the 'logging' section."""
        logging_config = self._config_manager.get_logging_config()
        self._log_level = str(logging_config.get("level", self._log_level)).upper()
        self._log_format = logging_config.get("format", self._log_format)
        self._log_file = logging_config.get("file") or self._log_file
        self._console_output = logging_config.get("console", self._console_output)

    def _configure_root_logger(self) -> None:
        """Attach handlers to the application logger."""
        root_logger = logging.getLogger(self._app_name)

        numeric_level = _numeric_level(self._log_level)
        root_logger.setLevel(numeric_level)

        # Repeated CLI/test setups must not stack handlers
        for handler in list(root_logger.handlers):
            root_logger.removeHandler(handler)
            handler.close()

        if self._console_output:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(numeric_level)

            if self._log_format == "json":
                console_handler.setFormatter(JSONFormatter())
            else:
                force_color = os.environ.get("FORCE_COLOR", "").lower() in ("1", "true", "yes")
                use_colors = force_color or (hasattr(sys.stderr, "isatty") and sys.stderr.isatty())
                console_handler.setFormatter(ColorizedFormatter(use_colors=use_colors))

            root_logger.addHandler(console_handler)

        if self._log_file:
            self._add_file_handler(root_logger, self._log_file)

        root_logger.propagate = False

    def _add_file_handler(self, logger: logging.Logger, file_path: str) -> None:
        """Add a JSON file handler capturing every level."""
        try:
            log_path = Path(file_path)
            log_path.parent.mkdir(parents=True, exist_ok=True)

            file_handler = logging.FileHandler(log_path, encoding="utf-8")
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(JSONFormatter())

            logger.addHandler(file_handler)
            # Handlers filter; the logger must let DEBUG through for the file
            logger.setLevel(logging.DEBUG)

        except OSError as e:
            print(f"Warning: Failed to add file handler: {e}", file=sys.stderr)

    def get_logger(self, name: str) -> logging.Logger:
        """
        Get or create a child logger of the application logger.

        Args:
            name: Component name (e.g. "transducer")
        """
        if name in self._configured_loggers:
            return self._configured_loggers[name]

        full_name = name if name.startswith(self._app_name) else f"{self._app_name}.{name}"
        logger = logging.getLogger(full_name)
        self._configured_loggers[name] = logger

        return logger

    def get_level(self) -> str:
        """Get the current log level."""
        return self._log_level


# =============================================================================
# Factory Function - Clean Architecture v5.2 Compliance (Rule #1)
# =============================================================================
def create_logging_config_manager(
    config_manager: Optional[Any] = None,
    log_level: Optional[str] = None,
    log_format: str = "human",
    log_file: Optional[str] = None,
    console_output: bool = True,
    app_name: str = APP_NAME,
) -> LoggingConfigManager:
    """
    Factory function for LoggingConfigManager (Clean Architecture v5.2 Pattern).

    Args:
        config_manager: ConfigManager instance for loading settings
        log_level: Level override (e.g. from --log-level)
        log_format: 'human' or 'json'
        log_file: Path to a JSON log file (optional)
        console_output: Whether to log to stderr
        app_name: Application logger name

    Returns:
        Configured LoggingConfigManager instance

    Example:
        >>> config = create_config_manager()
        >>> logging_mgr = create_logging_config_manager(config, log_level="INFO")
        >>> logger = logging_mgr.get_logger("learner")
    """
    return LoggingConfigManager(
        config_manager=config_manager,
        log_level=log_level,
        log_format=log_format,
        log_file=log_file,
        console_output=console_output,
        app_name=app_name,
    )


# =============================================================================
# Export public interface
# =============================================================================
__all__ = [
    "APP_NAME",
    "LoggingConfigManager",
    "create_logging_config_manager",
    "ColorizedFormatter",
    "JSONFormatter",
    "Colors",
    "SUCCESS_LEVEL",
]

"""
Dynamic Logging Configuration Module

This module provides a centralized logging system that can:
1. Dynamically enable/disable debug mode
2. Log to a file in debug mode for later inspection of long runs
3. Keep console output quiet so command output stays readable
4. Provide easy access to log files when needed
"""

import logging
import os
import platform
import sys
import tempfile
from datetime import datetime
from pathlib import Path
from typing import Optional

LOG_FILE_PREFIX = "xibasin"
FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
CONSOLE_FORMAT = '[%(levelname)s] %(name)s: %(message)s'


def resolve_log_dir(log_dir: Optional[str]) -> Path:
    """
    Pick a writable directory for log files.

    Tries the requested directory first, then the home directory, then the
    system temp directory.

    Returns:
        Path to a directory that accepted a test write
    """
    candidates = []
    if log_dir:
        candidates.append(Path(log_dir))
    candidates.append(Path(os.path.expanduser('~')))
    candidates.append(Path(tempfile.gettempdir()))

    for candidate in candidates:
        try:
            candidate.mkdir(parents=True, exist_ok=True)
            test_file = candidate / '.write_test'
            test_file.touch()
            test_file.unlink()
            return candidate
        except (PermissionError, OSError):
            continue

    return Path(tempfile.gettempdir())


class DynamicLogger:
    """
    Dynamic logging system that provides:
    - Console logging of warnings in normal mode
    - Console INFO output and a DEBUG log file in debug mode
    - Runtime debug mode switching
    - Easy log file access for troubleshooting
    """

    def __init__(self):
        self._debug_mode = False
        self._logger_configured = False
        self._log_dir: Optional[str] = None
        self._log_file_path: Optional[Path] = None
        self._file_handler: Optional[logging.FileHandler] = None
        self._console_handler: Optional[logging.StreamHandler] = None

    def setup_logging(self, debug_mode: bool = False, log_dir: Optional[str] = None) -> Optional[Path]:
        """
        Setup the logging system.

        Args:
            debug_mode: Whether to enable debug mode (console INFO and log file)
            log_dir: Directory to store log files in debug mode

        Returns:
            Path to the log file if debug mode is enabled, None otherwise
        """
        self._log_dir = log_dir

        root_logger = logging.getLogger()
        root_logger.setLevel(logging.DEBUG)

        # Clear existing handlers to avoid duplicates
        for handler in list(root_logger.handlers):
            root_logger.removeHandler(handler)
        self._file_handler = None
        self._console_handler = None
        self._log_file_path = None
        self._debug_mode = False

        # PIL logs plugin probing at DEBUG
        logging.getLogger('PIL').setLevel(logging.WARNING)

        self._console_handler = logging.StreamHandler(sys.stderr)
        self._console_handler.setLevel(logging.WARNING)
        self._console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        root_logger.addHandler(self._console_handler)

        self._logger_configured = True
        if debug_mode:
            self.enable_debug_mode()
        return self._log_file_path

    def enable_debug_mode(self):
        """Enable debug mode (console INFO output and file logging) at runtime."""
        if not self._logger_configured:
            raise RuntimeError("Logger not configured. Call setup_logging() first.")

        if self._debug_mode:
            return
        self._debug_mode = True

        if self._console_handler:
            self._console_handler.setLevel(logging.INFO)

        log_dir_path = resolve_log_dir(self._log_dir)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self._log_file_path = log_dir_path / f"{LOG_FILE_PREFIX}_{timestamp}.log"

        root_logger = logging.getLogger()
        try:
            self._file_handler = logging.FileHandler(self._log_file_path, encoding='utf-8')
            self._file_handler.setLevel(logging.DEBUG)
            self._file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
            root_logger.addHandler(self._file_handler)
            log_location = str(self._log_file_path)
        except Exception as e:
            log_location = f"Console only (file creation failed: {e})"
            self._log_file_path = None
            self._file_handler = None

        logger = logging.getLogger(__name__)
        logger.info("=" * 60)
        logger.info("xibasin - Debug Mode Enabled")
        logger.info(f"Log location: {log_location}")
        logger.info(f"Platform: {platform.system()} {platform.release()}")
        logger.info("=" * 60)

    def is_debug_enabled(self) -> bool:
        """Check if debug mode is currently enabled."""
        return self._debug_mode

    def log_system_info(self):
        """Log system information for debugging."""
        logger = logging.getLogger(__name__)

        # Import here to avoid circular imports
        from .resource_manager import get_resource_manager

        debug_info = get_resource_manager().debug_info()

        logger.info("System Information:")
        logger.info(f"  Platform: {sys.platform}")
        logger.info(f"  Python: {sys.version}")
        logger.info(f"  Executable: {sys.executable}")

        logger.info("Application Information:")
        for key, value in debug_info.items():
            logger.info(f"  {key}: {value}")


# Global logger instance
_dynamic_logger = DynamicLogger()


def setup_logging(debug_mode: bool = False, log_dir: Optional[str] = None) -> Optional[Path]:
    """Setup the global logging system."""
    return _dynamic_logger.setup_logging(debug_mode, log_dir)


def is_debug_enabled() -> bool:
    """Check if debug mode is enabled."""
    return _dynamic_logger.is_debug_enabled()


def log_system_info():
    """Log platform and resource information."""
    _dynamic_logger.log_system_info()


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with the given name."""
    return logging.getLogger(name)

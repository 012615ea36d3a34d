import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

from kcbs_lab.common.env import EnvironmentVariables as envs
from kcbs_lab.common.env import get_env

DEFAULT_LOG_LEVEL = logging.INFO


def resolve_log_level(name: str | None) -> int:
    """Maps a level name such as "debug" to its value, falling back to INFO for unknown names"""
    if not name:
        return DEFAULT_LOG_LEVEL
    return logging.getLevelNamesMapping().get(name.strip().upper(), DEFAULT_LOG_LEVEL)


# Initialize logger once at module level
logger = logging.getLogger("kcbs")

# Skip if logger is already configured
if not logger.hasHandlers():
    # Set format and level
    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
    log_level_name = get_env(envs.KCBS_LOG_LEVEL)
    logger.setLevel(resolve_log_level(log_level_name))

    # Console handler
    # Logs go to stderr so that CSV/JSON output on stdout stays clean
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_level_name and logging.getLevelNamesMapping().get(log_level_name.strip().upper()) is None:
        logger.warning(f"Unknown {envs.KCBS_LOG_LEVEL} '{log_level_name}', using INFO")

    # File handler with rotation (opt-in)
    log_file = get_env(envs.KCBS_LOG_FILE)
    if log_file:
        log_path = Path(log_file).expanduser()
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(log_path, maxBytes=10 * 1024 * 1024, backupCount=5)  # 10MB
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    # Prevent propagation to parent loggers (to prevent duplicate logs)
    logger.propagate = False

# settings.py

"""Environment-driven defaults for the MLCM command line."""

import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-6
DEFAULT_LOG_LEVEL = "WARNING"


def get_env_tol() -> Optional[float]:
    """MLCM_DEFAULT_TOL when set to a positive number, else None."""
    raw = os.getenv("MLCM_DEFAULT_TOL")
    if not raw:
        return None
    try:
        value = float(raw)
    except ValueError:
        logger.warning("ignoring MLCM_DEFAULT_TOL=%r: not a number", raw)
        return None
    if not value > 0:
        logger.warning("ignoring MLCM_DEFAULT_TOL=%r: must be positive", raw)
        return None
    return value


def get_default_tol() -> float:
    """MLCM_DEFAULT_TOL, falling back to 1e-6 when unset or unusable."""
    value = get_env_tol()
    return DEFAULT_TOL if value is None else value


def get_run_db_path() -> Optional[Path]:
    """Run-history database from MLCM_RUN_DB; None means runs are not recorded."""
    raw = os.getenv("MLCM_RUN_DB")
    return Path(raw) if raw else None


def get_log_level() -> str:
    level = os.getenv("MLCM_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(level), int):
        return DEFAULT_LOG_LEVEL
    return level

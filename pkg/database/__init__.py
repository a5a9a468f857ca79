"""
Database module for MLCM.
Handles the SQLite run history of verification suites.
"""

from database.db import init_db, get_conn
from database.run_logs import (
    clear_runs,
    export_runs_as_csv,
    get_pass_rate,
    get_recent_runs,
    log_report,
    log_suite,
)

__all__ = [
    "init_db",
    "get_conn",
    "log_report",
    "log_suite",
    "get_recent_runs",
    "get_pass_rate",
    "export_runs_as_csv",
    "clear_runs",
]

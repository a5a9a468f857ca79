# database/db.py

import sqlite3
from pathlib import Path
from typing import Union

DB_PATH = Path(__file__).parent.parent / "mlcm_runs.db"

PathLike = Union[str, Path]


def get_conn(path: PathLike = DB_PATH):
    """Get a SQLite connection with row factory enabled."""
    conn = sqlite3.connect(str(path), check_same_thread=False)
    conn.row_factory = sqlite3.Row
    return conn


def init_db(path: PathLike = DB_PATH) -> None:
    """Create the run-history schema if it doesn't exist."""
    conn = get_conn(path)
    cur = conn.cursor()

    # One row per verification report
    cur.execute("""
    CREATE TABLE IF NOT EXISTS verification_runs (
        id INTEGER PRIMARY KEY AUTOINCREMENT,
        command TEXT NOT NULL,
        suite TEXT NOT NULL,
        report_name TEXT NOT NULL,
        passed INTEGER NOT NULL,
        case_count INTEGER NOT NULL,
        failed_count INTEGER NOT NULL,
        worst_discrepancy REAL,
        tolerances TEXT,
        timestamp TEXT DEFAULT CURRENT_TIMESTAMP
    )
    """)

    conn.commit()
    conn.close()

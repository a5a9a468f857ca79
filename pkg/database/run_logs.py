"""
database/run_logs.py

Record verification runs (suite, report, pass flag, case counts, worst
discrepancy and tolerances) into SQLite so past runs can be listed,
summarised and exported.
"""
import json
from datetime import datetime, timezone
from typing import Any, Dict, List

import pandas as pd

from verification.reports import CMCertificate, LimitReport, SuiteResult, ValidationReport

from .db import DB_PATH, PathLike, get_conn, init_db


def log_report(report: ValidationReport, command: str, suite: str = "", path: PathLike = DB_PATH) -> None:
    """Insert one row for a ValidationReport."""
    init_db(path)
    worst = report.worst_case
    _insert(
        path,
        command,
        suite or report.suite_name,
        report.suite_name,
        report.passed,
        len(report.cases),
        report.failed_count,
        worst.max_discrepancy if worst is not None else None,
        report.tolerances,
    )


def log_suite(result: SuiteResult, command: str, path: PathLike = DB_PATH) -> int:
    """Record every check of a suite; returns the number of rows written."""
    init_db(path)
    for report in result.reports:
        log_report(report, command, result.suite, path)
    for cert in result.certificates:
        _log_certificate(cert, command, result.suite, path)
    for limit in result.limit_reports:
        _log_limit(limit, command, result.suite, path)
    return result.check_count


def _log_certificate(cert: CMCertificate, command: str, suite: str, path: PathLike) -> None:
    worst = min(row.min_signed_difference for row in cert.tableau)
    _insert(
        path, command, suite, cert.label, cert.passed, len(cert.grid), len(cert.violations),
        max(0.0, -worst), {"absolute": cert.tolerance},
    )


def _log_limit(limit: LimitReport, command: str, suite: str, path: PathLike) -> None:
    worst = max(limit.extrapolated_errors.values()) if limit.extrapolated_errors else None
    failed = sum(1 for err in limit.extrapolated_errors.values() if err > limit.error_tolerance)
    _insert(
        path, command, suite, f"limit {json.dumps(limit.params, sort_keys=True)}", limit.passed,
        len(limit.rows), failed, worst,
        {"error": limit.error_tolerance, "agreement": limit.agreement_tolerance},
    )


def _insert(path, command, suite, name, passed, case_count, failed_count, worst, tolerances) -> None:
    conn = get_conn(path)
    cur = conn.cursor()
    cur.execute(
        "INSERT INTO verification_runs (command, suite, report_name, passed, case_count, failed_count, worst_discrepancy, tolerances, timestamp) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)",
        (
            command,
            suite,
            name,
            1 if passed else 0,
            int(case_count),
            int(failed_count),
            None if worst is None else float(worst),
            json.dumps(tolerances, sort_keys=True),
            datetime.now(timezone.utc).isoformat(),
        ),
    )
    conn.commit()
    conn.close()


def get_recent_runs(limit: int = 100, path: PathLike = DB_PATH) -> List[Dict[str, Any]]:
    """Most recent recorded reports, newest first."""
    init_db(path)
    conn = get_conn(path)
    cur = conn.cursor()
    cur.execute(
        "SELECT id, command, suite, report_name, passed, case_count, failed_count, worst_discrepancy, tolerances, timestamp FROM verification_runs ORDER BY id DESC LIMIT ?",
        (limit,),
    )
    rows = cur.fetchall()
    conn.close()
    results = []
    for r in rows:
        results.append({
            "id": r["id"],
            "command": r["command"],
            "suite": r["suite"],
            "report_name": r["report_name"],
            "passed": bool(r["passed"]),
            "case_count": r["case_count"],
            "failed_count": r["failed_count"],
            "worst_discrepancy": r["worst_discrepancy"],
            "tolerances": json.loads(r["tolerances"]) if r["tolerances"] else {},
            "timestamp": r["timestamp"],
        })
    return results


def get_pass_rate(path: PathLike = DB_PATH) -> float:
    """Share of recorded reports that passed; 0.0 when nothing is recorded."""
    init_db(path)
    conn = get_conn(path)
    cur = conn.cursor()
    cur.execute("SELECT COUNT(*), COALESCE(SUM(passed), 0) FROM verification_runs")
    total, passed = cur.fetchone()
    conn.close()
    return float(passed) / total if total else 0.0


def export_runs_as_csv(path: PathLike = DB_PATH, limit: int = 1000) -> str:
    """CSV text of recent runs; empty string when nothing is recorded."""
    runs = get_recent_runs(limit, path)
    if not runs:
        return ""
    frame = pd.DataFrame(runs)
    frame["tolerances"] = frame["tolerances"].map(lambda t: json.dumps(t, sort_keys=True))
    return frame.to_csv(index=False)


def clear_runs(path: PathLike = DB_PATH) -> None:
    """Delete all recorded runs."""
    init_db(path)
    conn = get_conn(path)
    cur = conn.cursor()
    cur.execute("DELETE FROM verification_runs")
    conn.commit()
    conn.close()

"""
Verify

Runs the full check suite for a catalogue example and writes reports.
"""

from .report import CheckResult, CheckReport, REPORT_VERSION, reports_payload, dump_json, write_reports, print_report
from .suite import SuiteRunner, run_suite

__all__ = [
    'CheckResult', 'CheckReport', 'REPORT_VERSION', 'reports_payload', 'dump_json',
    'write_reports', 'print_report',
    'SuiteRunner', 'run_suite'
]

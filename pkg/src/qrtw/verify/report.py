"""
Check Reports

Machine-readable results of a suite run. Rationals are written as "p/q"
strings, keys are sorted and wall times are left null unless timings were
requested, so two runs with the same seed produce identical files.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from dataclasses_json import dataclass_json
from rich.console import Console
from rich.table import Table

from ..algebra import CheckOutcome
from ..utils.rationals import format_rational

logger = logging.getLogger(__name__)

REPORT_VERSION = "1"


def render_value(value: Any) -> str:
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    return str(value)


def render_values(values: Optional[Sequence[Any]]) -> Optional[List[str]]:
    return None if values is None else [render_value(v) for v in values]


@dataclass_json
@dataclass
class CheckResult:
    """One check: what was compared, how, and what came out."""
    check_id: str
    kind: str
    target: str
    mode: str
    status: str
    expected: str
    positive: bool
    asserted: bool = True
    trials: int = 0
    degree_bound: int = 0
    per_trial_bound: Optional[float] = None
    failure_bound: Optional[float] = None
    log10_failure_bound: Optional[float] = None
    witness: Optional[Dict[str, str]] = None
    lhs: Optional[List[str]] = None
    rhs: Optional[List[str]] = None
    detail: str = ''
    wall_time: Optional[float] = None

    @classmethod
    def from_outcome(cls, check_id: str, kind: str, target: str, mode: str, expected: str,
                     asserted: bool, outcome: CheckOutcome, wall_time: Optional[float] = None) -> 'CheckResult':
        result = cls(
            check_id=check_id, kind=kind, target=target, mode=mode,
            status=outcome.status, expected=expected, positive=outcome.status == expected,
            asserted=asserted, detail=outcome.detail, wall_time=wall_time,
        )
        evidence = outcome.evidence
        if evidence is not None:
            result.trials = evidence.trials
            result.degree_bound = evidence.degree
            result.per_trial_bound = evidence.per_trial_bound
            result.failure_bound = evidence.failure_bound
            result.log10_failure_bound = evidence.log10_failure_bound
            if evidence.witness is not None:
                result.witness = {name: render_value(v) for name, v in sorted(evidence.witness.items())}
                result.lhs = render_values(evidence.lhs)
                result.rhs = render_values(evidence.rhs)
        return result


@dataclass_json
@dataclass
class CheckReport:
    """All checks of one example, in execution order."""
    example: str
    seed: int
    parameters: Dict[str, str] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    version: str = REPORT_VERSION

    @property
    def overall(self) -> str:
        return 'pass' if all(c.positive for c in self.checks) else 'fail'

    @property
    def passed(self) -> bool:
        return self.overall == 'pass'

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.positive]

    def as_dict(self) -> Dict[str, Any]:
        data = self.to_dict()
        data['overall'] = self.overall
        return data


def reports_payload(reports: Sequence[CheckReport]) -> Dict[str, Any]:
    """A single report, or a wrapper listing several."""
    if len(reports) == 1:
        return reports[0].as_dict()
    return {
        'version': REPORT_VERSION,
        'overall': 'pass' if all(r.passed for r in reports) else 'fail',
        'reports': [r.as_dict() for r in reports],
    }


def dump_json(payload: Mapping[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_reports(reports: Sequence[CheckReport], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(reports_payload(reports)), encoding='utf-8')
    logger.info(f"📁 Report written to {path}")
    return path


def print_report(report: CheckReport, console: Optional[Console] = None, verbose: bool = False) -> None:
    """Human summary: one row per check, or only the failures unless verbose."""
    console = console or Console()
    table = Table(title=f"{report.example} ({report.overall})")
    table.add_column("check")
    table.add_column("mode")
    table.add_column("status")
    table.add_column("expected")
    table.add_column("")
    rows = report.checks if verbose else report.failures
    for check in rows:
        mark = "✅" if check.positive else "❌"
        expected = check.expected if check.asserted else f"{check.expected} (computed)"
        table.add_row(check.check_id, check.mode, check.status, expected, mark)
    passed = sum(1 for c in report.checks if c.positive)
    if rows:
        console.print(table)
    console.print(f"{report.example}: {passed}/{len(report.checks)} checks positive, overall {report.overall}")
    for check in report.failures:
        if check.witness:
            point = ", ".join(f"{k}={v}" for k, v in check.witness.items())
            console.print(f"  witness for {check.check_id}: {point}")

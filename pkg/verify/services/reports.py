"""
Check reports: one named statistical check with its verdict.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from levy_models.rng import RngStream


class Convention(str, Enum):
    P = 'p'
    Z = 'z'
    REL = 'rel'
    COUNT = 'count'


P_THRESHOLD = 0.01
Z_THRESHOLD = 4.0


@dataclass
class Part:
    """One tested quantity; ``value`` is a p-value, z-score, relative error or count."""

    label: str
    convention: Convention
    value: float
    threshold: float
    statistic: Optional[float] = None

    @property
    def passed(self) -> bool:
        if self.convention == Convention.P:
            return bool(self.value > self.threshold)
        if self.convention == Convention.Z:
            return bool(abs(self.value) < self.threshold)
        if self.convention == Convention.REL:
            return bool(self.value < self.threshold)
        return bool(self.value <= self.threshold)

    def as_dict(self) -> Dict:
        return {
            'convention': self.convention.value,
            'value': self.value,
            'threshold': self.threshold,
            'statistic': self.statistic,
            'passed': self.passed,
        }


def p_part(label: str, statistic: float, p_value: float, threshold: float = P_THRESHOLD) -> Part:
    return Part(label, Convention.P, p_value, threshold, statistic)


def z_part(label: str, z_score: float, statistic: Optional[float] = None,
           threshold: float = Z_THRESHOLD) -> Part:
    return Part(label, Convention.Z, z_score, threshold, statistic)


@dataclass
class TestReport:
    name: str
    statistic: Optional[float]
    threshold: float
    convention: Convention
    passed: bool
    p_value: Optional[float] = None
    z_score: Optional[float] = None
    n_replicates: int = 0
    n_grid: int = 0
    master_seed: int = 0
    notes: str = ''
    negative_control: bool = False
    details: Dict = field(default_factory=dict)

    @classmethod
    def from_parts(cls, name: str, parts: List[Part], rng: RngStream, n_replicates: int,
                   n_grid: int = 0, notes: str = '', negative_control: bool = False,
                   details: Optional[Dict] = None) -> 'TestReport':
        """
        Combine the parts of a check into one report.

        The report passes when every part passes; its headline numbers
        are those of the first failing part, or of the first part.
        """
        if not parts:
            raise ValueError(f"Check {name} produced no parts")
        failing = [part for part in parts if not part.passed]
        headline = failing[0] if failing else parts[0]
        details = dict(details or {})
        details['parts'] = {part.label: part.as_dict() for part in parts}
        if headline.convention == Convention.P:
            statistic, p_value, z_score = headline.statistic, headline.value, None
        elif headline.convention == Convention.Z:
            statistic, p_value, z_score = headline.statistic, None, headline.value
        else:
            statistic, p_value, z_score = headline.value, None, None
        return cls(
            name=name,
            statistic=statistic,
            threshold=headline.threshold,
            convention=headline.convention,
            passed=not failing,
            p_value=p_value,
            z_score=z_score,
            n_replicates=n_replicates,
            n_grid=n_grid,
            master_seed=rng.master_seed,
            notes=notes if not failing else f"{notes} failing: {', '.join(p.label for p in failing)}".strip(),
            negative_control=negative_control,
            details=details,
        )

    @property
    def verdict(self) -> str:
        if self.negative_control:
            return 'FAIL (expected)' if not self.passed else 'PASS (unexpected)'
        return 'PASS' if self.passed else 'FAIL'

    @property
    def counts_against_exit(self) -> bool:
        return not self.passed and not self.negative_control


def _number(value: Optional[float]) -> str:
    if value is None:
        return '-'
    if not math.isfinite(value):
        return str(value)
    return f"{value:.4g}"


def format_table(reports: List[TestReport]) -> str:
    """Fixed-width summary, one line per report."""
    header = f"{'check':<36} {'conv':<5} {'statistic':>10} {'p':>10} {'z':>8} {'n':>8} {'grid':>6}  verdict"
    lines = [header, '-' * len(header)]
    for report in reports:
        lines.append(
            f"{report.name:<36} {report.convention.value:<5} {_number(report.statistic):>10} "
            f"{_number(report.p_value):>10} {_number(report.z_score):>8} {report.n_replicates:>8} "
            f"{report.n_grid:>6}  {report.verdict}"
        )
    failed = sum(1 for report in reports if report.counts_against_exit)
    lines.append(f"{len(reports)} checks, {failed} failed")
    return '\n'.join(lines)

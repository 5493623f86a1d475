"""Pass/fail reports produced by the inequality checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one property check.

    ``worst_violation`` is ``max(0, max(lhs - rhs))`` over every checked
    instance, so a passing report has ``worst_violation <= tol``.
    ``location`` holds the abscissas (or offsets) of the worst instance, or
    ``None`` when nothing was violated.
    """

    name: str
    passed: bool
    worst_violation: float
    tol: float
    checked: int
    location: Optional[Tuple[float, ...]] = None
    children: Tuple["CheckReport", ...] = field(default=())

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "worst_violation": self.worst_violation,
            "tol": self.tol,
            "checked": self.checked,
            "location": None if self.location is None else list(self.location),
        }
        if self.children:
            out["children"] = [c.as_dict() for c in self.children]
        return out

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        where = "" if self.location is None else f" at {self.location}"
        return f"{self.name}: {verdict} (worst violation {self.worst_violation:.3g}, tol {self.tol:g}){where}"


def from_excess(name: str, excess: np.ndarray, tol: float,
                locations: Sequence[Tuple[float, ...]] | None = None) -> CheckReport:
    """Build a report from an array of ``lhs - rhs`` values (<= 0 means satisfied)."""
    excess = np.asarray(excess, dtype=float).ravel()
    if excess.size == 0:
        return CheckReport(name, True, 0.0, float(tol), 0)
    k = int(np.argmax(excess))
    worst = max(0.0, float(excess[k]))
    loc = None
    if worst > 0.0 and locations is not None:
        loc = tuple(float(v) for v in locations[k])
    return CheckReport(name, worst <= tol, worst, float(tol), int(excess.size), loc)


class _Worst:
    """Running maximum of violations for checks evaluated in chunks."""

    def __init__(self) -> None:
        self.value = 0.0
        self.location: Optional[Tuple[float, ...]] = None
        self.count = 0

    def update(self, excess: np.ndarray, location_of) -> None:
        if excess.size == 0:
            return
        self.count += int(excess.size)
        k = int(np.argmax(excess))
        if excess[k] > self.value:
            self.value = float(excess[k])
            self.location = tuple(float(v) for v in location_of(k))

    def report(self, name: str, tol: float) -> CheckReport:
        return CheckReport(name, self.value <= tol, self.value, float(tol),
                           self.count, self.location)


def combine(name: str, reports: Sequence[CheckReport]) -> CheckReport:
    """Conjunction of several reports; the worst child supplies the location."""
    if not reports:
        return CheckReport(name, True, 0.0, 0.0, 0)
    worst = max(reports, key=lambda r: r.worst_violation)
    return CheckReport(
        name=name,
        passed=all(r.passed for r in reports),
        worst_violation=worst.worst_violation,
        tol=max(r.tol for r in reports),
        checked=sum(r.checked for r in reports),
        location=worst.location,
        children=tuple(reports),
    )


def check_nondecreasing(name: str, xs: np.ndarray, values: np.ndarray, tol: float) -> CheckReport:
    # compares every pair x < y, not only neighbours, so small drops cannot accumulate
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return CheckReport(name, True, 0.0, float(tol), 0)
    run_max = np.maximum.accumulate(values[:-1])
    arg_max = _running_argmax(values[:-1])
    drops = run_max - values[1:]
    locs = [(xs[arg_max[k]], xs[k + 1]) for k in range(drops.size)]
    return from_excess(name, drops, tol, locs)


def _running_argmax(values: np.ndarray) -> np.ndarray:
    idx = np.arange(values.size)
    is_new = np.r_[True, values[1:] > np.maximum.accumulate(values)[:-1]]
    return np.maximum.accumulate(np.where(is_new, idx, 0))

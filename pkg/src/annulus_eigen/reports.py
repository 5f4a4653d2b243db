"""Check reports: one named comparison with its tolerance and verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

_RELATIONS = ("<=", ">=", "=")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of comparing ``lhs`` against ``rhs`` under ``relation``.

    ``passed`` is derived, never supplied: ``<=`` holds when
    ``lhs <= rhs + tolerance``, ``>=`` when ``lhs >= rhs - tolerance`` and
    ``=`` when ``|lhs - rhs| <= tolerance``.
    """

    name: str
    lhs: float
    rhs: float
    relation: str = "="
    tolerance: float = 0.0
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"relation must be one of {_RELATIONS}, got {self.relation!r}")
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")

    @property
    def passed(self) -> bool:
        lhs, rhs, tol = self.lhs, self.rhs, self.tolerance
        if lhs != lhs or rhs != rhs:
            return False
        if self.relation == "<=":
            return lhs <= rhs + tol
        if self.relation == ">=":
            return lhs >= rhs - tol
        return abs(lhs - rhs) <= tol

    @property
    def margin(self) -> float:
        """Signed slack of the relation (positive means satisfied strictly)."""
        if self.relation == "<=":
            return self.rhs - self.lhs
        if self.relation == ">=":
            return self.lhs - self.rhs
        return self.tolerance - abs(self.lhs - self.rhs)

    def as_row(self) -> dict[str, Any]:
        params = ";".join(f"{k}={v}" for k, v in self.params.items())
        return {
            "name": self.name,
            "params": params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class Certificate:
    """A bundle of checks that together certify one qualitative claim.

    ``data`` carries the located quantities (node positions, crossing
    radii, boundary values) that the checks were computed from.
    """

    name: str
    checks: tuple[CheckReport, ...]
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckReport:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[CheckReport]:
        return [c for c in self.checks if not c.passed]

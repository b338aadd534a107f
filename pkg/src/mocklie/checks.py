"""Axiom reports: boolean flags plus the first (or every) violation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .linalg import is_zero


@dataclass(frozen=True)
class Violation:
    """A failing instance of an identity.

    ``at`` holds 0-based basis indices of the failing tuple and ``residual`` the
    nonzero difference ``lhs - rhs`` (a vector, matrix or tensor).
    """

    axiom: str
    at: tuple[int, ...]
    residual: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, Violation):
            return NotImplemented
        return (self.axiom == other.axiom and self.at == other.at
                and self.residual.shape == other.residual.shape
                and bool(np.all(self.residual == other.residual)))


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of checking a family of identities.

    ``flags`` are the conditions that decide :attr:`ok`.  ``violations`` holds
    the first violation of each failing flag, or every violation when built in
    verbose mode.  ``info`` holds derived facts that do not affect the verdict
    (e.g. whether an O-operator is a Rota-Baxter operator).  Flags are also
    reachable as attributes: ``report.jacobi``.
    """

    flags: dict[str, bool]
    first_violation: Violation | None = None
    violations: tuple[Violation, ...] = ()
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    def __bool__(self):
        return self.ok

    def __getattr__(self, name):
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        info = self.__dict__.get("info", {})
        if name in info:
            return info[name]
        raise AttributeError(name)


class ReportBuilder:
    """Accumulates flags from residual arrays in a fixed order."""

    def __init__(self, verbose: bool = False):
        self.verbose = verbose
        self.flags: dict[str, bool] = {}
        self.violations: list[Violation] = []
        self.info: dict[str, Any] = {}

    def residuals(self, name: str, residual: np.ndarray, index_axes: int) -> bool:
        """Scan ``residual`` whose first ``index_axes`` axes enumerate basis tuples."""
        if is_zero(residual):
            self.flags[name] = True
            return True
        ok = True
        for at in np.ndindex(residual.shape[:index_axes]):
            r = residual[at]
            nonzero = r != 0 if np.ndim(r) == 0 else not is_zero(r)
            if nonzero:
                if ok or self.verbose:
                    self._record(Violation(name, tuple(int(i) for i in at),
                                           np.asarray(r, dtype=object)))
                ok = False
                if not self.verbose:
                    break
        self.flags[name] = ok
        return ok

    def flag(self, name: str, value: bool, at: tuple[int, ...] = (),
             residual: np.ndarray | None = None) -> bool:
        value = bool(value)
        self.flags[name] = value
        if not value:
            res = residual if residual is not None else np.empty(0, dtype=object)
            self._record(Violation(name, at, res))
        return value

    def _record(self, v: Violation):
        self.violations.append(v)

    def build(self) -> AxiomReport:
        first = self.violations[0] if self.violations else None
        return AxiomReport(dict(self.flags), first, tuple(self.violations), dict(self.info))

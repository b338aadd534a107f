"""Deterministic command reports rendered as JSON or as fixed-layout text."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .checks import AxiomReport, Violation
from .linalg import format_rational

Labels = Sequence[Sequence[str]] | None


@dataclass
class Check:
    name: str
    flag: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "flag": self.flag, "witness": self.witness}


@dataclass
class Report:
    """Outcome of one CLI command; ``verdict`` is pass iff every flag is true."""

    command: str
    checks: list[Check] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)
    bundle: dict | None = None

    @property
    def verdict(self) -> str:
        return "pass" if all(c.flag for c in self.checks) else "fail"

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def add(self, name: str, flag: bool, witness: dict | None = None) -> Check:
        check = Check(name, bool(flag), witness if not flag else None)
        self.checks.append(check)
        return check

    def extend(self, report: AxiomReport, labels: dict[str, tuple[Labels, Labels]] | None = None,
               prefix: str = "") -> None:
        """Append every flag of an :class:`AxiomReport` with its witness."""
        labels = labels or {}
        first = {}
        for v in report.violations:
            first.setdefault(v.axiom, v)
        for name, flag in report.flags.items():
            v = first.get(name)
            at_labels, res_labels = labels.get(name, (None, None))
            self.add(prefix + name, flag,
                     witness(v, at_labels, res_labels) if v is not None else None)

    def to_dict(self) -> dict:
        out = {"command": self.command, "verdict": self.verdict,
               "checks": [c.to_dict() for c in self.checks],
               "info": jsonable(self.info)}
        if self.bundle is not None:
            out["bundle"] = self.bundle
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        checks = [Check(c["name"], c["flag"], c.get("witness")) for c in data["checks"]]
        return cls(data["command"], checks, dict(data.get("info", {})), data.get("bundle"))


def jsonable(value):
    """Convert report values to JSON types; rationals become ``"p/q"`` strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__} in a report")


def _label(labels: Labels, idx: tuple[int, ...]) -> str:
    if labels is None:
        return "[" + ",".join(str(i + 1) for i in idx) + "]"
    return "⊗".join(labels[axis][i] for axis, i in enumerate(idx))


def witness(v: Violation, at_labels: Labels = None, residual_labels: Labels = None) -> dict:
    """First-violation data: 1-based indices plus nonzero residual terms."""
    out: dict[str, Any] = {"at": [i + 1 for i in v.at]}
    if at_labels is not None and v.at:
        out["at_basis"] = [at_labels[axis][i] for axis, i in enumerate(v.at)]
    res = np.asarray(v.residual, dtype=object)
    terms = []
    for idx in np.ndindex(res.shape):
        if res[idx] != 0:
            terms.append({"index": [i + 1 for i in idx],
                          "term": _label(residual_labels, idx) if idx else "",
                          "c": format_rational(res[idx])})
    out["residual"] = terms
    return out


def render_terms(terms: list[dict]) -> str:
    """``[{"term": "e1", "c": "3"}]`` → ``3·e1``; signs are folded into the sum."""
    if not terms:
        return "0"
    pieces = []
    for n, t in enumerate(terms):
        q = Fraction(t["c"])
        sign = "-" if q < 0 else "+"
        mag = abs(q)
        if not t["term"]:
            body = format_rational(mag)
        elif mag == 1:
            body = t["term"]
        else:
            body = f"{format_rational(mag)}·{t['term']}"
        if n == 0:
            pieces.append(("-" if q < 0 else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def _text_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(_text_value(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_text_value(v)}" for k, v in value.items()) + "}"
    return str(value)


def render_text(data: dict) -> str:
    lines = [f"command: {data['command']}", f"verdict: {data['verdict'].upper()}", "checks:"]
    for c in data["checks"]:
        line = f"  [{'ok' if c['flag'] else 'FAIL'}] {c['name']}"
        w = c.get("witness")
        if w is not None:
            where = w.get("at_basis") or [str(i) for i in w["at"]]
            if where:
                line += f" at ({', '.join(where)})"
            if w["residual"]:
                line += f": residual {render_terms(w['residual'])}"
        lines.append(line)
    if data.get("info"):
        lines.append("info:")
        for key, value in data["info"].items():
            lines.append(f"  {key}: {_text_value(value)}")
    if data.get("bundle"):
        lines.append("constructed:")
        for key, value in data["bundle"].items():
            if key in ("algebra", "prelie"):
                lines.append(f"  {key}: dim {value['dim']} ({', '.join(value['basis'])})")
            else:
                lines.append(f"  {key}: {', '.join(value)}")
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "json") -> bytes:
    data = report.to_dict()
    if fmt == "json":
        return (json.dumps(data, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "text":
        return render_text(data).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")

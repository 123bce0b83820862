"""Diagnostic reports shared by every validator."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

# violations kept per check; enough to locate a failure without flooding output
MAX_WITNESSES = 8


@dataclass
class Report:
    """Named checks, each with the list of violating witnesses (empty = pass)."""

    title: str
    checks: dict[str, list] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    info: dict[str, Any] = field(default_factory=dict)

    def record(self, name: str, violations) -> bool:
        violations = list(violations)
        self.counts[name] = len(violations)
        self.checks[name] = violations[:MAX_WITNESSES]
        return not violations

    def require(self, name: str, ok: bool, witness: Any = None) -> bool:
        return self.record(name, [] if ok else [witness if witness is not None else "failed"])

    def merge(self, other: "Report", prefix: str | None = None) -> "Report":
        pre = (prefix or other.title) + ": "
        for k, v in other.checks.items():
            self.checks[pre + k] = v
            self.counts[pre + k] = other.counts.get(k, len(v))
        for k, v in other.info.items():
            self.info[pre + k] = v
        return self

    @property
    def ok(self) -> bool:
        return not any(self.counts.values())

    @property
    def failures(self) -> dict[str, list]:
        return {k: v for k, v in self.checks.items() if self.counts.get(k)}

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": {k: {"pass": not self.counts.get(k), "violations": self.counts.get(k, 0),
                           "witnesses": [_jsonable(w) for w in v]}
                       for k, v in self.checks.items()},
            "info": _jsonable(self.info),
        }

    def lines(self) -> list[str]:
        out = ["[%s] %s" % ("PASS" if self.ok else "FAIL", self.title)]
        for k, v in self.checks.items():
            n = self.counts.get(k, 0)
            if n:
                out.append("  FAIL %s (%d violation%s), e.g. %s" % (k, n, "" if n == 1 else "s",
                                                                    ", ".join(map(str, v[:3]))))
            else:
                out.append("  pass %s" % k)
        for k, v in self.info.items():
            out.append("  %s = %s" % (k, _jsonable(v)))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


class InvariantViolation(Exception):
    """A mathematical check failed; carries the report with the witnesses."""

    def __init__(self, report: Report):
        super().__init__("\n".join(report.lines()))
        self.report = report

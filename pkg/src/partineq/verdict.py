"""Outcome types shared by envelope certification, criteria and scans."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Optional


class Status(str, Enum):
    VERIFIED = "Verified"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


def combine(statuses: Iterable[Status]) -> Status:
    """Refuted beats Inconclusive beats Verified."""
    out = Status.VERIFIED
    for s in statuses:
        if s is Status.REFUTED:
            return Status.REFUTED
        if s is Status.INCONCLUSIVE:
            out = Status.INCONCLUSIVE
    return out


def big(v: int) -> str:
    """Exact integers travel as decimal strings in reports."""
    return str(v)


@dataclass
class Verdict:
    """Result of one finite check.

    ``horizon`` is the index range that was actually examined, so a
    Verified verdict never claims more than what was computed.  ``witnesses``
    holds JSON-ready dicts describing failures; ``inconclusive`` lists the
    places where the precision cap was hit.
    """

    name: str
    status: Status
    horizon: Optional[tuple[int, int]] = None
    witnesses: list[dict] = field(default_factory=list)
    thresholds: dict[str, Optional[int]] = field(default_factory=dict)
    inconclusive: list[dict] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    checks: list[Verdict] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.status is Status.REFUTED and not self.witnesses and not any(
            c.status is Status.REFUTED for c in self.checks
        ):
            raise ValueError(f"{self.name}: a Refuted verdict needs a witness")

    @property
    def ok(self) -> bool:
        return self.status is Status.VERIFIED

    def check(self, name: str) -> Verdict:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def walk(self):
        yield self
        for c in self.checks:
            yield from c.walk()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status.value,
            "horizon": list(self.horizon) if self.horizon is not None else None,
            "thresholds": dict(self.thresholds),
            "witnesses": list(self.witnesses),
            "inconclusive": list(self.inconclusive),
            "details": dict(self.details),
            "checks": [c.to_dict() for c in self.checks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> Verdict:
        return cls(
            name=d["name"],
            status=Status(d["status"]),
            horizon=tuple(d["horizon"]) if d.get("horizon") is not None else None,
            witnesses=list(d.get("witnesses", [])),
            thresholds=dict(d.get("thresholds", {})),
            inconclusive=list(d.get("inconclusive", [])),
            details=dict(d.get("details", {})),
            checks=[cls.from_dict(c) for c in d.get("checks", [])],
        )

    def summary(self) -> str:
        span = f" on [{self.horizon[0]}, {self.horizon[1]}]" if self.horizon else ""
        extra = ""
        if self.thresholds:
            extra = " " + ", ".join(f"{k}={v}" for k, v in self.thresholds.items())
        if self.witnesses:
            extra += f" ({len(self.witnesses)} witness{'es' if len(self.witnesses) != 1 else ''})"
        return f"{self.name}: {self.status.value}{span}{extra}"

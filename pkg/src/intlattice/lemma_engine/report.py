"""Verdict containers: every mathematical outcome is data, never an exception."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    kind: str
    hypotheses: dict[str, bool] = field(default_factory=dict)
    conclusions: dict[str, bool] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def conclusion_holds(self) -> bool:
        return all(self.conclusions.values())

    @property
    def failing_hypotheses(self) -> list[str]:
        return [k for k, v in self.hypotheses.items() if not v]

    @property
    def failing_conclusions(self) -> list[str]:
        return [k for k, v in self.conclusions.items() if not v]

    @property
    def sound(self) -> bool:
        """The implication the lemma asserts: hypotheses ⟹ conclusion."""
        return not self.hypotheses_hold or self.conclusion_holds

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "hypotheses": dict(self.hypotheses),
            "conclusions": dict(self.conclusions),
            "hypotheses_hold": self.hypotheses_hold,
            "conclusion_holds": self.conclusion_holds,
            "details": _stringify(self.details),
        }


def _stringify(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)

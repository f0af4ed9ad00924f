"""Certificates: serializable verdicts with witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
VIOLATED = "violated"


@dataclass
class Certificate:
    claim: str
    status: str
    witness: dict | None = None
    seed: int | None = None
    trials: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"claim": self.claim, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        out["seed"] = self.seed
        out["trials"] = self.trials
        if self.details:
            out["details"] = self.details
        return out


def holds(claim: str, **kw) -> Certificate:
    return Certificate(claim, HOLDS, **kw)


def violated(claim: str, witness: dict, **kw) -> Certificate:
    return Certificate(claim, VIOLATED, witness=witness, **kw)

"""Classification reports shared by the toric, trinomial, and dossier paths."""

from __future__ import annotations

from dataclasses import dataclass, field

VERDICTS = ("A", "B", "C", "Inconclusive")


@dataclass(frozen=True)
class Evidence:
    criterion: str
    data: dict

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "data": self.data}


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str
    evidence: tuple[Evidence, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    def with_evidence(self, *more: Evidence) -> "ClassificationReport":
        return ClassificationReport(self.verdict, self.evidence + more)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "evidence": [e.to_dict() for e in self.evidence],
        }

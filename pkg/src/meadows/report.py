"""Suite report containers shared by the axiom and translation suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SuiteEntry:
    name: str
    verdict: str  # "pass" or "fail"
    witness: dict | None = None
    status: str | None = None
    samples: int | None = None
    notes: str | None = None

    def to_json(self) -> dict:
        entry: dict = {"name": self.name, "verdict": self.verdict}
        if self.witness is not None:
            entry["witness"] = self.witness
        if self.status is not None:
            entry["status"] = self.status
        if self.samples is not None:
            entry["samples"] = self.samples
        if self.notes is not None:
            entry["notes"] = self.notes
        return entry


@dataclass
class SuiteReport:
    suite: str
    structure: str
    entries: list[SuiteEntry] = field(default_factory=list)
    # Aggregate used for exit codes; intentionally not serialised.
    ok: bool = True

    def recompute_ok(self) -> "SuiteReport":
        self.ok = all(e.verdict == "pass" for e in self.entries)
        return self

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "structure": self.structure,
            "entries": [e.to_json() for e in self.entries],
        }

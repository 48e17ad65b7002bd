"""Result records for exhaustive checks."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

MAX_WITNESSES = 20


@dataclass
class Report:
    check: str
    checked: int = 0
    failures: int = 0
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, witness) -> None:
        self.failures += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)

    def expect(self, condition: bool, witness) -> bool:
        self.checked += 1
        if not condition:
            self.fail(witness)
        return condition

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def __bool__(self):
        return self.passed

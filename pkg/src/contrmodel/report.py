from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of a validator: passes iff ``failures`` is empty.

    Each failure is the name of the violated identity, optionally suffixed
    with ``@<degree>``.
    """

    subject: str
    failures: list[str] = field(default_factory=list)

    def fail(self, identity: str, degree: int | None = None) -> None:
        self.failures.append(identity if degree is None else f"{identity}@{degree}")

    def check(self, condition: bool, identity: str, degree: int | None = None) -> None:
        if not condition:
            self.fail(identity, degree)

    def extend(self, other: Report, prefix: str = "") -> None:
        self.failures.extend(prefix + f for f in other.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "failures": list(self.failures)}

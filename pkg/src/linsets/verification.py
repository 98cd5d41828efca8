from dataclasses import asdict, dataclass, field
from typing import Optional

STATUSES = ("pass", "fail", "vacuous", "hypothesis_unmet")


@dataclass
class VerificationOutcome:
    name: str
    status: str
    witness: Optional[str] = None
    stats: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and not self.witness:
            raise ValueError("a failing outcome must carry a witness")

    @property
    def ok(self):
        return self.status != "fail"

    def to_dict(self):
        return asdict(self)


def outcome(name, passed, U=None, **details):
    from .io import format_subspace

    if passed:
        return VerificationOutcome(name, "pass", details=details)
    witness = format_subspace(U) if U is not None else repr(details)
    return VerificationOutcome(name, "fail", witness=witness, details=details)

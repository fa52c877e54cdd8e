import time
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional

from .scalars import Scalar, format_scalar


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class Stopwatch:
    """Context manager measuring wall time of one identity check"""

    def __init__(self):
        self.seconds = 0.0
        self._start = 0.0

    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc: Any) -> None:
        self.seconds = time.perf_counter() - self._start


@dataclass
class IdentityRecord:
    """Outcome of checking one identity on one instance over one field"""
    identity: str
    verdict: Verdict
    field: str = "rational"
    witness: Dict[str, str] = dc_field(default_factory=dict)
    seconds: float = 0.0
    trial: Optional[int] = None
    note: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "identity": self.identity,
            "verdict": self.verdict.value,
            "field": self.field,
            "seconds": round(self.seconds, 6),
        }
        if self.trial is not None:
            data["trial"] = self.trial
        if self.witness:
            data["witness"] = dict(self.witness)
        if self.note:
            data["note"] = self.note
        return data


@dataclass
class VerificationReport:
    """Per-identity records; the aggregate passes iff no record fails"""
    records: List[IdentityRecord] = dc_field(default_factory=list)

    @property
    def verdict(self) -> Verdict:
        return Verdict.FAIL if self.failures() else Verdict.PASS

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def failures(self) -> List[IdentityRecord]:
        return [r for r in self.records if r.verdict is Verdict.FAIL]

    def get(self, identity: str) -> IdentityRecord:
        for record in self.records:
            if record.identity == identity:
                return record
        raise KeyError(identity)

    def check(self, identity: str, lhs: Scalar, rhs: Scalar, field_name: str = "rational",
              seconds: float = 0.0, **witness: Scalar) -> IdentityRecord:
        """Record lhs == rhs; both sides (and any extra values) become the witness on failure"""
        ok = lhs == rhs
        record = IdentityRecord(
            identity=identity,
            verdict=Verdict.PASS if ok else Verdict.FAIL,
            field=field_name,
            seconds=seconds,
        )
        if not ok:
            record.witness = {"lhs": format_scalar(lhs), "rhs": format_scalar(rhs)}
            record.witness.update({k: format_scalar(v) for k, v in witness.items()})
        self.records.append(record)
        return record

    def confirm(self, identity: str, ok: bool, field_name: str = "rational", seconds: float = 0.0,
                **witness: str) -> IdentityRecord:
        """Record a boolean property; the witness is kept only on failure"""
        record = IdentityRecord(identity, Verdict.PASS if ok else Verdict.FAIL, field_name, seconds=seconds)
        if not ok:
            record.witness = dict(witness)
        self.records.append(record)
        return record

    def skip(self, identity: str, reason: str, field_name: str = "rational") -> IdentityRecord:
        record = IdentityRecord(identity, Verdict.SKIPPED, field_name, note=reason)
        self.records.append(record)
        return record

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.records.extend(other.records)
        return self

    def for_trial(self, trial: int) -> "VerificationReport":
        for record in self.records:
            record.trial = trial
        return self

    def sorted_by_trial(self) -> "VerificationReport":
        return VerificationReport(sorted(self.records, key=lambda r: (r.trial is not None, r.trial or 0)))

    def counts(self) -> Dict[str, int]:
        counts = {v.value: 0 for v in Verdict}
        for record in self.records:
            counts[record.verdict.value] += 1
        return counts

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "counts": self.counts(),
            "records": [r.to_dict() for r in self.records],
        }

    @classmethod
    def merge(cls, reports: Iterable["VerificationReport"]) -> "VerificationReport":
        merged = cls()
        for report in reports:
            merged.extend(report)
        return merged

"""Verification reports shared by the verifier routines."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

VERIFIED = "verified"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"


@dataclass
class VerificationReport:
    claim: str
    params: dict[str, Any]
    status: str = VERIFIED
    witnesses: list[Any] = field(default_factory=list)
    elapsed_ms: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def violation(self, witness: Any) -> None:
        self.witnesses.append(witness)
        self.status = VIOLATED

    def mark_inconclusive(self) -> None:
        if self.status == VERIFIED:
            self.status = INCONCLUSIVE

    def finalize(self) -> "VerificationReport":
        if self.status == VIOLATED and not self.witnesses:
            raise AssertionError(f"{self.claim}: violated report without a witness")
        return self

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "claim": self.claim,
            "params": self.params,
            "status": self.status,
            "witnesses": self.witnesses,
        }
        if self.details:
            out["details"] = self.details
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, default=jsonable)


def jsonable(obj: Any) -> Any:
    if hasattr(obj, "to_json_obj"):
        return obj.to_json_obj()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


@contextmanager
def timed(report: VerificationReport):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = (time.perf_counter() - start) * 1000.0
        report.finalize()

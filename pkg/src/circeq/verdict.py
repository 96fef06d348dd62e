"""Equivalence verdicts carrying a checkable witness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

EQUIVALENT = "equivalent"
NOT_EQUIVALENT = "not_equivalent"
INCONCLUSIVE = "inconclusive"


class WitnessError(AssertionError):
    """A claimed witness failed re-verification."""


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of an equivalence decision.

    A positive verdict must carry a witness and a ``check`` callable that
    recomputes the claimed identity; construction fails if the check does
    not hold.  Negative verdicts come from exhaustive sweeps and carry no
    witness.
    """

    relation: str
    status: str
    witness: Any = None
    nodes: int = 0
    check: Callable[[Any], bool] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.status not in (EQUIVALENT, NOT_EQUIVALENT, INCONCLUSIVE):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == EQUIVALENT:
            if self.witness is None or self.check is None:
                raise WitnessError(f"{self.relation}: positive verdict without witness")
            if not self.check(self.witness):
                raise WitnessError(f"{self.relation}: witness {self.witness!r} does not verify")

    @property
    def equivalent(self) -> bool:
        return self.status == EQUIVALENT

    @property
    def inconclusive(self) -> bool:
        return self.status == INCONCLUSIVE

    def __bool__(self) -> bool:
        return self.equivalent

    @classmethod
    def yes(cls, relation: str, witness: Any, check: Callable[[Any], bool], nodes: int = 0):
        return cls(relation, EQUIVALENT, witness, nodes, check)

    @classmethod
    def no(cls, relation: str, nodes: int = 0):
        return cls(relation, NOT_EQUIVALENT, None, nodes)

    @classmethod
    def unknown(cls, relation: str, nodes: int = 0):
        return cls(relation, INCONCLUSIVE, None, nodes)

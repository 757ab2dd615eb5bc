"""Outcome records shared by the identity, decomposition and recursion checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .exact import is_pole

EQUAL = "equal"
UNEQUAL = "unequal"
POLE_STATUS = "pole"
SKIPPED = "skipped"
STATUSES = (EQUAL, UNEQUAL, POLE_STATUS, SKIPPED)


@dataclass(frozen=True)
class CheckReport:
    """One parameter point: both sides and the verdict.

    ``label`` is an identity id (``"I1"``...) or a decomposition id.  For walk
    checks ``n`` holds the step count ``N``.  Symbols that are not free are
    ``None``.
    """

    label: str
    n: int
    m: object = None
    r: object = None
    lhs: object = None
    rhs: object = None
    status: str = SKIPPED
    reason: str = ""
    terms: Optional[tuple] = field(default=None, compare=False)

    @property
    def ok(self) -> bool:
        return self.status != UNEQUAL


def compare(lhs, rhs) -> str:
    if is_pole(lhs) or is_pole(rhs):
        return POLE_STATUS
    return EQUAL if lhs == rhs else UNEQUAL

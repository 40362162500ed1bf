"""Exception types and the small check record shared by every verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class InputError(ValueError):
    """Bad arguments: wrong shapes, bounds exceeded, unmet preconditions."""


class AxiomError(Exception):
    """A structure failed one of its defining identities."""

    def __init__(self, check: "Check"):
        super().__init__(str(check))
        self.check = check


class ConsistencyError(AssertionError):
    """Two independent evaluations of the same fact disagree.

    This never signals bad input; it means the library's own conventions
    are wrong somewhere.
    """


@dataclass(frozen=True)
class Check:
    """Outcome of an exhaustive identity check.

    ``witness`` is the lexicographically first failing tuple of element
    indices, or ``None`` when the identity holds everywhere.
    """

    name: str
    ok: bool
    witness: tuple[int, ...] | None = None
    detail: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"{self.name}: ok"
        return f"{self.name}: FAILED at {self.witness}"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "ok": self.ok}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


def first_witness(name: str, bad, **detail) -> Check:
    """Build a Check from a boolean array of failures (C order = lexicographic)."""
    import numpy as np

    idx = np.argwhere(bad)
    if len(idx) == 0:
        return Check(name, True)
    return Check(name, False, tuple(int(i) for i in idx[0]), dict(detail))

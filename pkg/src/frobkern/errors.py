"""Exception hierarchy and the pass/fail record returned by the checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class FrobkernError(Exception):
    pass


class DegreeMismatch(FrobkernError, ValueError):
    pass


class ClosureCapExceeded(FrobkernError):
    pass


class NotFrobeniusError(FrobkernError, ValueError):
    def __init__(self, message: str, verdict: Verdict | None = None):
        super().__init__(message)
        self.verdict = verdict


class ConstructionError(FrobkernError):
    """A self-verification inside a construction failed.

    For a genuine Frobenius input this means a bug, so it is raised rather than
    reported.
    """

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Verdict:
    """Result of a check; truthy on success, ``witness`` describes the first failure."""

    ok: bool
    witness: str | None = None
    data: Any = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, data: Any = None) -> Verdict:
        return cls(True, None, data)

    @classmethod
    def failed(cls, witness: str, data: Any = None) -> Verdict:
        return cls(False, witness, data)

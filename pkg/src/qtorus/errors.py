"""Shared exceptions and the default enumeration budget."""

from __future__ import annotations

DEFAULT_MAX_WORK = 10**8


class FeasibilityError(RuntimeError):
    """An exhaustive computation would exceed its work budget."""

    def __init__(self, what: str, work: int, bound: int):
        super().__init__(f"{what}: estimated work {work} exceeds bound {bound}")
        self.what = what
        self.work = work
        self.bound = bound

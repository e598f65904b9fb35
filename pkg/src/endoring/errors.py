"""Exception types and the enumeration guard."""

from __future__ import annotations

import os

DEFAULT_ELEMENT_CAP = 1 << 16
DEFAULT_ENDO_CAP = 1 << 14
CAP_ENV_VAR = "ENDORING_ENUM_CAP"


class EndoRingError(Exception):
    """Base class for every error raised by this package."""


class ParentMismatch(EndoRingError, ValueError):
    pass


class DivisibilityViolation(EndoRingError, ValueError):
    def __init__(self, i: int, j: int, required: int):
        self.i, self.j, self.required = i, j, required
        super().__init__(f"DivisibilityViolation({i},{j}): entry must be divisible by {required}")


class ExponentOrder(EndoRingError, ValueError):
    pass


class NotQuasiInjective(EndoRingError, ValueError):
    pass


class NotIdempotent(EndoRingError, ValueError):
    pass


class NotElementary(EndoRingError, ValueError):
    pass


class ZeroSubgroup(EndoRingError, ValueError):
    pass


class ZeroElement(EndoRingError, ValueError):
    pass


class StageError(EndoRingError, ValueError):
    pass


class EnumerationGuardExceeded(EndoRingError):
    def __init__(self, what: str, size: int, cap: int):
        self.what, self.size, self.cap = what, size, cap
        super().__init__(f"enumeration guard exceeded: {what} has size {size} > cap {cap}")


def _env_cap() -> int | None:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None or raw.strip() == "":
        return None
    return int(raw)


def element_cap() -> int:
    cap = _env_cap()
    return DEFAULT_ELEMENT_CAP if cap is None else cap


def endo_cap() -> int:
    cap = _env_cap()
    return DEFAULT_ENDO_CAP if cap is None else cap


def guard_elements(size: int, what: str = "group") -> None:
    cap = element_cap()
    if size > cap:
        raise EnumerationGuardExceeded(what, size, cap)


def guard_endos(size: int, what: str = "endomorphism ring") -> None:
    cap = endo_cap()
    if size > cap:
        raise EnumerationGuardExceeded(what, size, cap)

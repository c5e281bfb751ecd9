"""Exception types shared across the package."""

from __future__ import annotations


class CoxeterError(Exception):
    """Base class for all errors raised by coxcent."""


class UnsupportedLabel(CoxeterError, ValueError):
    def __init__(self, m: object) -> None:
        super().__init__(f"unsupported Coxeter label m={m!r}; supported: 2, 3, 4, 5, 6, inf")
        self.m = m


class UnsupportedOrder(CoxeterError):
    """An inner product of two roots implies a dihedral order outside {2,...,6, inf}."""


class GraphFormatError(CoxeterError, ValueError):
    pass


class NotFiniteType(CoxeterError):
    pass


class InvalidRoot(CoxeterError, ValueError):
    pass


class InvariantViolation(CoxeterError):
    """A mathematical invariant that must hold for genuine inputs was found broken."""


class NonTerminating(CoxeterError):
    """An enumeration exceeded its hard cap (the input is probably not of finite type)."""


class MoveUnavailable(CoxeterError):
    pass


class PreconditionError(CoxeterError, ValueError):
    pass

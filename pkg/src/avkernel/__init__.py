"""Exact kernel for restricted power series over C[[t]] and the valued field C((t))."""

from .coeff import AdicCoeff
from .errors import (
    BudgetExceeded,
    CannotRegularize,
    ContractViolation,
    DivisionByZeroAtPrecision,
    KernelError,
    NotAUnit,
    NotHenselianInstance,
    NotMonic,
    NotRegular,
    ParseError,
    PrecisionExhausted,
)
from .hahn import HahnSeries
from .series import RestrictedSeries
from .valfield import LaurentElem

__all__ = [
    "AdicCoeff",
    "BudgetExceeded",
    "CannotRegularize",
    "ContractViolation",
    "DivisionByZeroAtPrecision",
    "HahnSeries",
    "KernelError",
    "LaurentElem",
    "NotAUnit",
    "NotHenselianInstance",
    "NotMonic",
    "NotRegular",
    "ParseError",
    "PrecisionExhausted",
    "RestrictedSeries",
]

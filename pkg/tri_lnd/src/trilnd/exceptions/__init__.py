"""
TRILND Exceptions
=================

Gerarchia degli errori. I verdetti matematici NON sono eccezioni.
"""

from trilnd.exceptions.algebra import (
    AlgebraError,
    FactorizationError,
    NonCoprimeModuliError,
    NonExactDivisionError,
    PolynomialDivisionByZero,
    VarSetMismatchError,
    ZeroPolynomialError,
)
from trilnd.exceptions.core import (
    ConfigurationError,
    ContractViolationError,
    InternalInconsistencyError,
    InvalidInputError,
    TrilndError,
)
from trilnd.exceptions.parsing import (
    ParsingError,
    PolynomialSyntaxError,
    ProblemFormatError,
    UndeclaredVariableError,
)

__all__ = [
    "TrilndError",
    "ConfigurationError",
    "InvalidInputError",
    "ContractViolationError",
    "InternalInconsistencyError",
    "AlgebraError",
    "VarSetMismatchError",
    "ZeroPolynomialError",
    "PolynomialDivisionByZero",
    "NonExactDivisionError",
    "NonCoprimeModuliError",
    "FactorizationError",
    "ParsingError",
    "PolynomialSyntaxError",
    "UndeclaredVariableError",
    "ProblemFormatError",
]

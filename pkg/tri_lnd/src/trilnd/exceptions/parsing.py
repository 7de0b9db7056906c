# -----------------------------------------------------------------------------
# File: trilnd/exceptions/parsing.py
# -----------------------------------------------------------------------------

"""Errori di lettura di polinomi e file problema."""

from __future__ import annotations

from typing import Optional

from trilnd.exceptions.core import TrilndError


class ParsingError(TrilndError):
    """Base per tutti gli errori di lettura (codice di uscita 2)."""


class PolynomialSyntaxError(ParsingError):
    """Errore di sintassi con posizione (riga, colonna) e token incriminato."""

    def __init__(self, message: str, line: int, column: int, token: Optional[str] = None):
        super().__init__(message, {"line": line, "column": column, "token": token})
        self.line = line
        self.column = column
        self.token = token

    def __str__(self) -> str:
        where = f"riga {self.line}, colonna {self.column}"
        if self.token is not None:
            return f"{self.message} ({where}, token {self.token!r})"
        return f"{self.message} ({where})"


class UndeclaredVariableError(PolynomialSyntaxError):
    """Variabile usata ma non dichiarata nel problema."""


class ProblemFormatError(ParsingError):
    """Documento problema o report malformato."""

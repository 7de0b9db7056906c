# -----------------------------------------------------------------------------
# File: trilnd/exceptions/core.py
# -----------------------------------------------------------------------------

"""Eccezioni di base di TRILND.

I verdetti matematici (non triangolabile, indeterminato, ...) sono valori e
non passano mai da qui: queste classi segnalano input errati, contratti
violati o incoerenze interne.
"""

from __future__ import annotations

from typing import Any, Dict, Optional


class TrilndError(Exception):
    """Radice della gerarchia di errori TRILND."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = dict(details or {})

    def __str__(self) -> str:
        if not self.details:
            return self.message
        extra = ", ".join(f"{key}={value}" for key, value in sorted(self.details.items()))
        return f"{self.message} ({extra})"


class ConfigurationError(TrilndError):
    """Parametro di configurazione non valido."""


class InvalidInputError(TrilndError):
    """L'input non rispetta le precondizioni della pipeline."""


class ContractViolationError(InvalidInputError):
    """Contratto violato: X(f) != 0, fetta locale non valida, inversa errata..."""


class InternalInconsistencyError(TrilndError):
    """Un invariante interno non regge (es. X(c0) != 0 o verifica finale fallita)."""

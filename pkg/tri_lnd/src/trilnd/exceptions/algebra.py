# -----------------------------------------------------------------------------
# File: trilnd/exceptions/algebra.py
# -----------------------------------------------------------------------------

"""Errori dell'aritmetica polinomiale."""

from __future__ import annotations

from trilnd.exceptions.core import TrilndError


class AlgebraError(TrilndError):
    """Errore generico del substrato algebrico."""


class VarSetMismatchError(AlgebraError):
    """Due polinomi vivono in insiemi di variabili non compatibili."""


class ZeroPolynomialError(AlgebraError):
    """Operazione non definita sul polinomio nullo."""


class PolynomialDivisionByZero(AlgebraError, ZeroDivisionError):
    """Divisione per il polinomio nullo."""


class NonExactDivisionError(AlgebraError):
    """Il divisore non divide esattamente il dividendo."""


class NonCoprimeModuliError(AlgebraError):
    """Moduli non coprimi nel teorema cinese del resto."""


class FactorizationError(AlgebraError):
    """Fattorizzazione non disponibile per l'input dato."""

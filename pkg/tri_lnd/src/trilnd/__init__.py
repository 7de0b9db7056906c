# -----------------------------------------------------------------------------
# File: trilnd/__init__.py
# -----------------------------------------------------------------------------

"""
TRILND
======

Decide se una derivazione localmente nilpotente di K[x,y,z], data in forma
jacobiana, e' triangolabile; in caso positivo produce le coordinate che la
rendono triangolare, altrimenti un testimone dell'ostruzione.
"""

from . import core
from .core import KernelPair, SemiDecisionBounds, Verdict, jacobian_derivation, triangulate

__version__ = "0.1.0"
__all__ = [
    "KernelPair",
    "SemiDecisionBounds",
    "Verdict",
    "__version__",
    "core",
    "jacobian_derivation",
    "triangulate",
]

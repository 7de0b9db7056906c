# -----------------------------------------------------------------------------
# File: trilnd/core/plinth.py
# -----------------------------------------------------------------------------

"""Fette locali minimali e generatore dell'ideale plinth.

Si parte da una fetta locale qualsiasi; per ogni fattore primo q di X(s) nel
nucleo si controlla se ``s = h(f, g) mod q``: in tal caso ``(s - h(f, g)) / q``
e' ancora una fetta locale con immagine divisa per q, e si ricomincia.
Quando nessun primo supera il test la fetta e' minimale e X(s) genera il plinth.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from trilnd.core.derivation import DEFAULT_NILPOTENCY_BOUND, Derivation, KernelPair, local_slice
from trilnd.core.factorization import exact_divide, factor_bivariate
from trilnd.core.groebner import subalgebra_membership, substitute_tags
from trilnd.core.polynomial import Polynomial, VarSet
from trilnd.exceptions import ContractViolationError, InternalInconsistencyError

logger = logging.getLogger(__name__)

KERNEL_VARSET = VarSet(("F", "G"))


@dataclass(frozen=True)
class PlinthCertificate:
    """
    Fetta locale minimale ``s`` con ``X(s) = c_xyz = c_FG(f, g)``.

    ``c_xyz`` e' primitivo con coefficiente direttivo positivo; ``primes`` sono i
    fattori primi di ``c_FG`` per cui il test di appartenenza modulo il primo
    fallisce (certificato di minimalita').
    """

    s: Polynomial
    c_xyz: Polynomial
    c_FG: Polynomial
    kernel: KernelPair
    primes: Tuple[Polynomial, ...] = ()
    divisions: int = 0
    squarefree_part: Optional[Polynomial] = None

    @property
    def is_slice_generator(self) -> bool:
        return self.c_xyz.is_constant

    def with_squarefree_part(self, d: Polynomial) -> "PlinthCertificate":
        return replace(self, squarefree_part=d)


def rewrite_in_kernel(h: Polynomial, kernel: KernelPair) -> Optional[Polynomial]:
    """H(F, G) con H(f, g) = h, oppure None se h non sta in K[f, g]."""
    if h.is_constant:
        return Polynomial.constant(KERNEL_VARSET, h.constant_value())
    H = subalgebra_membership(h, kernel.as_tags("F", "G"))
    return None if H is None else H.embed(KERNEL_VARSET)


def _check_local_slice(X: Derivation, s: Polynomial) -> Polynomial:
    image = X.apply(s)
    if image.is_zero:
        raise ContractViolationError(f"{s} non e' una fetta locale: X(s) = 0")
    if not X.apply(image).is_zero:
        raise ContractViolationError(f"{s} non e' una fetta locale: X^2(s) != 0")
    return image


def minimize_local_slice(X: Derivation, s0: Polynomial, kernel: KernelPair) -> PlinthCertificate:
    """
    Rende minimale una fetta locale.

    Args:
        X: Derivazione localmente nilpotente irriducibile.
        s0: Fetta locale di partenza.
        kernel: Generatori del nucleo.

    Returns:
        Il certificato con la fetta minimale e il generatore del plinth.
    """
    tags = kernel.as_tags("F", "G")
    s = s0.embed(X.varset)
    divisions = 0
    while True:
        image = _check_local_slice(X, s)
        image_FG = rewrite_in_kernel(image, kernel)
        if image_FG is None:
            raise ContractViolationError(f"X(s) = {image} non sta in K[f, g]: nucleo errato")
        if image_FG.is_constant:
            primes: List[Polynomial] = []
            break
        primes = list(factor_bivariate(image_FG).distinct)
        for prime in primes:
            q = substitute_tags(prime, tags).embed(X.varset)
            H = subalgebra_membership(s, tags, modulus=q)
            if H is None:
                continue
            shift = substitute_tags(H, tags).embed(X.varset)
            s = exact_divide(s - shift, q)
            divisions += 1
            logger.debug(f"Fetta ridotta dal primo {prime}: nuova s = {s}")
            break
        else:
            break

    unit, c_xyz = image.normalized()
    s = s / unit
    c_FG = image_FG / unit
    if substitute_tags(c_FG, tags).embed(X.varset) != c_xyz or X.apply(s) != c_xyz:
        raise InternalInconsistencyError("Riscrittura del generatore del plinth non coerente")
    certificate = PlinthCertificate(s, c_xyz, c_FG, kernel, tuple(primes), divisions)
    logger.info(f"Plinth: c = {c_xyz}, fetta minimale s = {s} ({divisions} divisioni)")
    return certificate


def plinth_generator(
    X: Derivation,
    kernel: KernelPair,
    bound: int = DEFAULT_NILPOTENCY_BOUND,
) -> PlinthCertificate:
    """Fetta locale dalla prima catena utile, poi minimizzazione."""
    s0 = local_slice(X, bound)
    logger.debug(f"Fetta locale iniziale: {s0}")
    return minimize_local_slice(X, s0, kernel)


def is_minimal(X: Derivation, certificate: PlinthCertificate) -> bool:
    """Ricertifica a posteriori: nessun primo di c_FG ammette la riduzione."""
    tags = certificate.kernel.as_tags("F", "G")
    if certificate.c_FG.is_constant:
        return True
    for prime in factor_bivariate(certificate.c_FG).distinct:
        q = substitute_tags(prime, tags).embed(X.varset)
        if subalgebra_membership(certificate.s, tags, modulus=q) is not None:
            return False
    return True

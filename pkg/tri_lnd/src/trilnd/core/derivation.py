# -----------------------------------------------------------------------------
# File: trilnd/core/derivation.py
# -----------------------------------------------------------------------------

"""Derivazioni di K[x,y,z] (e, internamente, di K[F,G]).

Costruzione in forma jacobiana, iterazione, semidecisione della locale
nilpotenza, decomposizione irriducibile, fette locali, coniugio ed
esponenziale.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from trilnd.core.factorization import exact_divide, gcd_many
from trilnd.core.polynomial import Polynomial, Rational, VarSet
from trilnd.exceptions import (
    ContractViolationError,
    InternalInconsistencyError,
    InvalidInputError,
    VarSetMismatchError,
)

logger = logging.getLogger(__name__)

DEFAULT_NILPOTENCY_BOUND = 200
DEFAULT_DEGREE_CAP = 60
DEGREE_BREAKER_FACTOR = 4


@dataclass(frozen=True, slots=True)
class SemiDecisionBounds:
    """Limiti delle semidecisioni, riportati nel rapporto."""

    nilpotency_bound: int = DEFAULT_NILPOTENCY_BOUND
    degree_cap: int = DEFAULT_DEGREE_CAP

    def __post_init__(self) -> None:
        if self.nilpotency_bound < 1 or self.degree_cap < 1:
            raise ValueError("I limiti delle semidecisioni devono essere positivi")

    def as_dict(self) -> Dict[str, int]:
        return {"nilpotency_bound": self.nilpotency_bound, "degree_cap": self.degree_cap}


@dataclass(frozen=True)
class Derivation:
    """Derivazione data dalle immagini delle variabili (estesa per Leibniz)."""

    images: Tuple[Polynomial, ...]
    varset: VarSet

    def __post_init__(self) -> None:
        images = tuple(image.embed(self.varset) for image in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != len(self.varset):
            raise VarSetMismatchError(f"Servono {len(self.varset)} immagini, ricevute {len(images)}")
        if all(image.is_zero for image in images):
            raise InvalidInputError("La derivazione nulla non e' ammessa")

    @classmethod
    def from_images(cls, varset: VarSet, images: Sequence[Polynomial]) -> "Derivation":
        return cls(tuple(images), varset)

    def image(self, name: str) -> Polynomial:
        return self.images[self.varset.index(name)]

    def apply(self, h: Polynomial) -> Polynomial:
        h = h.embed(self.varset)
        result = Polynomial.zero(self.varset)
        for name, image in zip(self.varset.names, self.images):
            if not image.is_zero and h.degree(name) > 0:
                result = result + image * h.diff(name)
        return result

    __call__ = apply

    def iterate(self, h: Polynomial, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("k deve essere non negativo")
        for _ in range(k):
            if h.is_zero:
                break
            h = self.apply(h)
        return h.embed(self.varset)

    def scaled(self, factor: Polynomial) -> "Derivation":
        """La derivazione ``factor * X``."""
        return Derivation(tuple(factor * image for image in self.images), self.varset)

    def divided(self, factor: Polynomial) -> "Derivation":
        """La derivazione ``X / factor`` (divisione esatta componente per componente)."""
        return Derivation(tuple(exact_divide(image, factor) for image in self.images), self.varset)

    def as_dict(self) -> Dict[str, str]:
        return {name: image.to_text() for name, image in zip(self.varset.names, self.images)}

    def __str__(self) -> str:
        return " + ".join(f"({image})*d/d{name}" for name, image in zip(self.varset.names, self.images) if image)


@dataclass(frozen=True)
class KernelPair:
    """Generatori (f, g) del nucleo: contratto d'ingresso, verificato."""

    f: Polynomial
    g: Polynomial

    def check(self, X: Derivation) -> None:
        for label, generator in (("f", self.f), ("g", self.g)):
            if not X.apply(generator).is_zero:
                raise ContractViolationError(
                    f"Contratto del nucleo violato: X({label}) != 0", {label: generator.to_text()}
                )

    def as_tags(self, first: str = "F", second: str = "G") -> List[Tuple[str, Polynomial]]:
        return [(first, self.f), (second, self.g)]


class NilpotencyStatus(str, Enum):
    LOCALLY_NILPOTENT = "locally_nilpotent"
    EXCEEDED_BOUND = "exceeded_bound"


@dataclass(frozen=True, slots=True)
class CycleWitness:
    """Relazione ``X^k(v) = ratio * X^j(v)`` con ratio != 0 e j < k: confuta la nilpotenza."""

    variable: str
    k: int
    j: int
    ratio: Rational


@dataclass(frozen=True, slots=True)
class NilpotencyVerdict:
    status: NilpotencyStatus
    iteration_counts: Tuple[Optional[int], ...]
    bound_used: int
    degree_cap: int = DEFAULT_DEGREE_CAP
    tripped: Optional[str] = None  # "bound", "degree_cap" o "cycle"
    cycle: Optional[CycleWitness] = None

    @property
    def is_nilpotent(self) -> bool:
        return self.status is NilpotencyStatus.LOCALLY_NILPOTENT

    @property
    def refuted(self) -> bool:
        return self.cycle is not None


def jacobian_derivation(f: Polynomial, g: Polynomial, varset: Optional[VarSet] = None) -> Derivation:
    """
    X(h) = det J(f, g, h) rispetto a (x, y, z).

    Args:
        f: Primo generatore del nucleo.
        g: Secondo generatore del nucleo.
        varset: Le tre variabili (default: il VarSet comune di f e g).

    Returns:
        La derivazione jacobiana; uccide f e g per costruzione.
    """
    varset = varset or f.varset.union(g.varset)
    if len(varset) != 3:
        raise VarSetMismatchError(f"La forma jacobiana richiede tre variabili, non {varset}")
    f, g = f.embed(varset), g.embed(varset)
    x, y, z = varset.names
    fx, fy, fz = f.diff(x), f.diff(y), f.diff(z)
    gx, gy, gz = g.diff(x), g.diff(y), g.diff(z)
    images = (fy * gz - fz * gy, fz * gx - fx * gz, fx * gy - fy * gx)
    if all(image.is_zero for image in images):
        raise InvalidInputError("f e g sono algebricamente dipendenti: derivazione nulla")
    return Derivation(images, varset)


def bivariate_jacobian(U: Polynomial, varset: Optional[VarSet] = None) -> Derivation:
    """D_U = (dU/dG) d/dF - (dU/dF) d/dG sul piano (F, G)."""
    varset = varset or U.varset
    if len(varset) != 2:
        raise VarSetMismatchError(f"Servono due variabili, non {varset}")
    U = U.embed(varset)
    first, second = varset.names
    return Derivation((U.diff(second), -U.diff(first)), varset)


def apply(X: Derivation, h: Polynomial) -> Polynomial:
    return X.apply(h)


def iterate(X: Derivation, h: Polynomial, k: int) -> Polynomial:
    return X.iterate(h, k)


def commutator(X: Derivation, Y: Derivation) -> Tuple[Polynomial, ...]:
    """Immagini di [X, Y] = XY - YX sulle variabili (possono essere tutte nulle)."""
    if X.varset != Y.varset:
        raise VarSetMismatchError("Derivazioni su anelli diversi")
    return tuple(X.apply(b) - Y.apply(a) for a, b in zip(X.images, Y.images))


def _proportional(a: Polynomial, b: Polynomial) -> Optional[Rational]:
    """Restituisce r con a = r*b, se esiste."""
    if a.is_zero or b.is_zero or len(a.terms()) != len(b.terms()):
        return None
    ratio = a.leading_coefficient / b.leading_coefficient
    return ratio if a == b.scale(ratio) else None


def is_locally_nilpotent(
    X: Derivation,
    bound: int = DEFAULT_NILPOTENCY_BOUND,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> NilpotencyVerdict:
    """
    Semidecisione della locale nilpotenza sui generatori.

    Accetta se ogni variabile si annulla entro ``bound`` iterazioni; altrimenti
    ExceededBound, con eventuale ciclo ``X^k(v) = r X^j(v)`` come confutazione.
    Interrompe quando un iterato supera ``4 * degree_cap`` in grado totale.
    """
    if bound < 1:
        raise ValueError("bound deve essere >= 1")
    ceiling = DEGREE_BREAKER_FACTOR * degree_cap
    counts: List[Optional[int]] = []
    for name in X.varset.names:
        current = Polynomial.variable(X.varset, name)
        seen: Dict[Tuple[int, Tuple], List[Tuple[int, Polynomial]]] = {}
        count: Optional[int] = None
        for step in range(1, bound + 1):
            current = X.apply(current)
            if current.is_zero:
                count = step
                break
            if current.total_degree > ceiling:
                logger.info(f"Nilpotenza: grado {current.total_degree} oltre {ceiling} su {name}")
                return NilpotencyVerdict(
                    NilpotencyStatus.EXCEEDED_BOUND, tuple(counts) + (None,), bound, degree_cap, "degree_cap"
                )
            signature = (current.total_degree, current.leading_monomial)
            for j, previous in seen.get(signature, []):
                ratio = _proportional(current, previous)
                if ratio is not None:
                    witness = CycleWitness(name, step, j, ratio)
                    logger.info(f"Nilpotenza confutata: X^{step}({name}) = {ratio} X^{j}({name})")
                    return NilpotencyVerdict(
                        NilpotencyStatus.EXCEEDED_BOUND, tuple(counts) + (None,), bound, degree_cap, "cycle", witness
                    )
            seen.setdefault(signature, []).append((step, current))
        if count is None:
            return NilpotencyVerdict(NilpotencyStatus.EXCEEDED_BOUND, tuple(counts) + (None,), bound, degree_cap, "bound")
        counts.append(count)
    verdict = NilpotencyVerdict(NilpotencyStatus.LOCALLY_NILPOTENT, tuple(counts), bound, degree_cap)
    for name, count in zip(X.varset.names, counts):
        if not X.iterate(Polynomial.variable(X.varset, name), count).is_zero:
            raise InternalInconsistencyError(f"Conteggio di nilpotenza non riprodotto su {name}")
    return verdict


def irreducible_decomposition(X: Derivation) -> Tuple[Polynomial, Derivation]:
    """X = c0 * Y con c0 = MCD normalizzato delle immagini e Y irriducibile."""
    c0 = gcd_many(X.images)
    if c0.is_constant:
        return Polynomial.one(X.varset), X
    if not X.apply(c0).is_zero:
        raise InternalInconsistencyError(f"X(c0) != 0 per c0 = {c0}")
    logger.info(f"Decomposizione irriducibile: c0 = {c0}")
    return c0, X.divided(c0)


def local_slice(X: Derivation, bound: int = DEFAULT_NILPOTENCY_BOUND) -> Polynomial:
    """
    Fetta locale X^{k-1}(v) dalla prima catena utile, scandendo le variabili
    dall'ultima alla prima (z, y, x).
    """
    for name in reversed(X.varset.names):
        chain = [Polynomial.variable(X.varset, name)]
        for _ in range(bound):
            following = X.apply(chain[-1])
            if following.is_zero:
                break
            chain.append(following)
        else:
            raise ContractViolationError(f"Catena di {name} oltre {bound} passi: X non localmente nilpotente?")
        if len(chain) >= 2:
            return chain[-2]
    raise InvalidInputError("Derivazione nulla: nessuna fetta locale")


def conjugate(
    X: Derivation,
    sigma: Sequence[Polynomial],
    inverse: Sequence[Polynomial],
) -> Derivation:
    """
    La derivazione h -> sigma(X(sigma^-1(h))).

    ``sigma`` e ``inverse`` sono le immagini delle variabili; la loro
    composizione deve dare l'identita' in entrambi i versi.
    """
    varset = X.varset
    sigma = tuple(p.embed(varset) for p in sigma)
    inverse = tuple(p.embed(varset) for p in inverse)
    forward = dict(zip(varset.names, sigma))
    backward = dict(zip(varset.names, inverse))
    for name, a, b in zip(varset.names, sigma, inverse):
        variable = Polynomial.variable(varset, name)
        if b.substitute(forward, varset) != variable or a.substitute(backward, varset) != variable:
            raise ContractViolationError(f"L'inversa fornita non inverte l'automorfismo su {name}")
    images = tuple(X.apply(b).substitute(forward, varset) for b in inverse)
    return Derivation(images, varset)


def exp_map(X: Derivation, h: Polynomial, cap: int = DEFAULT_NILPOTENCY_BOUND, t: int = 1) -> Polynomial:
    """exp(tX)(h) = sum_k t^k X^k(h)/k!, somma finita per X localmente nilpotente."""
    result = Polynomial.zero(X.varset)
    term = h.embed(X.varset)
    for k in range(cap + 1):
        if term.is_zero:
            return result
        result = result + term.scale(QQ(t ** k, factorial(k)))
        term = X.apply(term)
    raise ContractViolationError(f"exp(X) non termina entro {cap} passi: X non localmente nilpotente")

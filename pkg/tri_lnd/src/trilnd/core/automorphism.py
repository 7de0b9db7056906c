# -----------------------------------------------------------------------------
# File: trilnd/core/automorphism.py
# -----------------------------------------------------------------------------

"""Automorfismi polinomiali con inversa nota.

Convenzione: un automorfismo sigma agisce come ``h -> h(sigma(x), sigma(y), sigma(z))``;
``images`` sono le immagini delle variabili e ``inverse`` quelle di sigma^-1.
Servono al coniugio (equivarianza del plinth) e ai generatori casuali della
suite di chiusura.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix

from trilnd.core.derivation import Derivation, KernelPair, conjugate, jacobian_derivation
from trilnd.core.polynomial import Polynomial, Scalar, VarSet, to_rational
from trilnd.exceptions import ContractViolationError, InvalidInputError, VarSetMismatchError

logger = logging.getLogger(__name__)

MAX_WORD_LENGTH = 4
MAX_HEIGHT = 5
MAX_TRIANGULAR_DEGREE = 3


@dataclass(frozen=True)
class Automorphism:
    varset: VarSet
    images: Tuple[Polynomial, ...]
    inverse_images: Tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        if len(self.images) != len(self.varset) or len(self.inverse_images) != len(self.varset):
            raise VarSetMismatchError(f"Servono {len(self.varset)} immagini per {self.varset}")
        object.__setattr__(self, "images", tuple(p.embed(self.varset) for p in self.images))
        object.__setattr__(self, "inverse_images", tuple(p.embed(self.varset) for p in self.inverse_images))

    def _bindings(self, images: Sequence[Polynomial]) -> dict:
        return dict(zip(self.varset.names, images))

    def check(self) -> "Automorphism":
        """Verifica che le due composizioni diano l'identita'; restituisce self."""
        forward = self._bindings(self.images)
        backward = self._bindings(self.inverse_images)
        for name, a, b in zip(self.varset.names, self.images, self.inverse_images):
            variable = Polynomial.variable(self.varset, name)
            if a.substitute(backward, self.varset) != variable or b.substitute(forward, self.varset) != variable:
                raise ContractViolationError(f"Inversa errata sulla variabile {name}")
        return self

    def apply(self, h: Polynomial) -> Polynomial:
        return h.embed(self.varset).substitute(self._bindings(self.images), self.varset)

    __call__ = apply

    def apply_inverse(self, h: Polynomial) -> Polynomial:
        return h.embed(self.varset).substitute(self._bindings(self.inverse_images), self.varset)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.varset, self.inverse_images, self.images)

    def conjugate(self, X: Derivation) -> Derivation:
        """sigma X sigma^-1."""
        return conjugate(X, self.images, self.inverse_images)

    def as_dict(self) -> dict:
        return {name: image.to_text() for name, image in zip(self.varset.names, self.images)}


# ---- Costruttori ----


def identity(varset: VarSet) -> Automorphism:
    variables = Polynomial.variables(varset)
    return Automorphism(varset, variables, variables)


def elementary(varset: VarSet, name: str, addend: Polynomial) -> Automorphism:
    """``name -> name + addend`` con ``addend`` libero da ``name``."""
    addend = addend.embed(varset)
    if addend.degree(name) > 0:
        raise InvalidInputError(f"L'addendo di un automorfismo elementare non deve contenere {name}")
    variables = list(Polynomial.variables(varset))
    index = varset.index(name)
    forward, backward = list(variables), list(variables)
    forward[index] = variables[index] + addend
    backward[index] = variables[index] - addend
    return Automorphism(varset, tuple(forward), tuple(backward))


def affine(
    varset: VarSet,
    matrix: Sequence[Sequence[Scalar]],
    shift: Optional[Sequence[Scalar]] = None,
) -> Automorphism:
    """
    ``x_i -> sum_j M_ij x_j + shift_i`` con M invertibile sui razionali.

    Args:
        varset: Variabili.
        matrix: Matrice quadrata M.
        shift: Traslazione (default nulla).

    Returns:
        L'automorfismo affine con inversa ``x -> M^-1 (x - shift)``.
    """
    size = len(varset)
    M = Matrix(matrix)
    if M.shape != (size, size):
        raise VarSetMismatchError(f"Matrice {M.shape} incompatibile con {varset}")
    if M.det() == 0:
        raise InvalidInputError("Matrice singolare: nessun automorfismo affine")
    shift = list(shift) if shift is not None else [0] * size
    variables = Polynomial.variables(varset)
    forward = []
    for i in range(size):
        image = Polynomial.constant(varset, to_rational(shift[i]))
        for j in range(size):
            image = image + variables[j].scale(to_rational(M[i, j]))
        forward.append(image)
    Minv = M.inv()
    shifted = [variables[j] - to_rational(shift[j]) for j in range(size)]
    backward = []
    for i in range(size):
        image = Polynomial.zero(varset)
        for j in range(size):
            image = image + shifted[j].scale(to_rational(Minv[i, j]))
        backward.append(image)
    return Automorphism(varset, tuple(forward), tuple(backward))


def compose(first: Automorphism, second: Automorphism) -> Automorphism:
    """L'automorfismo ``first o second`` (prima second, poi first, come mappe di anelli)."""
    if first.varset != second.varset:
        raise VarSetMismatchError("Automorfismi su anelli diversi")
    varset = first.varset
    images = tuple(first.apply(image) for image in second.images)
    inverse_images = tuple(second.apply_inverse(image) for image in first.inverse_images)
    return Automorphism(varset, images, inverse_images)


def inverse(sigma: Automorphism) -> Automorphism:
    return sigma.inverse()


def apply(sigma: Automorphism, h: Polynomial) -> Polynomial:
    return sigma.apply(h)


# ---- Generatori casuali (suite di chiusura) ----


def _random_coefficient(rng: random.Random, height: int) -> int:
    value = 0
    while value == 0:
        value = rng.randint(-height, height)
    return value


def _random_polynomial(
    varset: VarSet,
    names: Sequence[str],
    rng: random.Random,
    degree: int,
    height: int,
    terms: int = 3,
) -> Polynomial:
    """Polinomio sparso nelle sole ``names`` con grado totale <= degree."""
    result = Polynomial.zero(varset)
    for _ in range(terms):
        monomial = Polynomial.constant(varset, _random_coefficient(rng, height))
        budget = rng.randint(0, degree)
        for _ in range(budget):
            monomial = monomial * Polynomial.variable(varset, rng.choice(list(names)))
        result = result + monomial
    return result


_UNIMODULAR_SHEARS: List[Tuple[Tuple[int, int, int], ...]] = [
    ((0, 1, 0), (1, 0, 0), (0, 0, 1)),
    ((1, 0, 0), (0, 0, 1), (0, 1, 0)),
    ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
    ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (0, 1, 1), (0, 0, 1)),
    ((1, 0, 0), (1, 1, 0), (0, 1, 1)),
]


def random_tame(
    varset: VarSet,
    rng: random.Random,
    length: int = MAX_WORD_LENGTH,
    height: int = MAX_HEIGHT,
) -> Automorphism:
    """Parola casuale di al piu' ``length`` automorfismi elementari o affini."""
    if len(varset) != 3:
        raise VarSetMismatchError("random_tame lavora su tre variabili")
    sigma = identity(varset)
    for _ in range(rng.randint(1, max(1, length))):
        if rng.random() < 0.3:
            matrix = rng.choice(_UNIMODULAR_SHEARS)
            shift = [rng.randint(-height, height) for _ in range(3)]
            step = affine(varset, matrix, shift)
        else:
            name = rng.choice(varset.names)
            others = [other for other in varset.names if other != name]
            addend = _random_polynomial(varset, others, rng, 2, height, terms=2)
            step = elementary(varset, name, addend)
        sigma = compose(step, sigma)
    logger.debug(f"Automorfismo casuale: {sigma.as_dict()}")
    return sigma


def random_triangular_kernel(
    varset: VarSet,
    rng: random.Random,
    degree: int = MAX_TRIANGULAR_DEGREE,
    height: int = MAX_HEIGHT,
) -> KernelPair:
    """
    Coppia (x, h) con ``h = a(x) z + B(x, y)``: Jac(x, h, .) e' triangolare
    con T(y) = -a(x) e T(z) = dB/dy.

    B ha termine direttivo in y costante (beta * y^m, m >= 1), cosi' h(lambda, y, z)
    non e' mai costante e il nucleo e' esattamente K[x, h].
    """
    x, y, z = varset.names
    a = Polynomial.zero(varset)
    while a.is_zero:
        a = _random_polynomial(varset, [x], rng, degree, height, terms=2)
    m = rng.randint(1, degree)
    B = Polynomial.variable(varset, y) ** m * _random_coefficient(rng, height)
    for _ in range(2):
        lower = rng.randint(0, m - 1)
        coefficient = _random_polynomial(varset, [x], rng, max(0, degree - lower), height, terms=1)
        B = B + coefficient * Polynomial.variable(varset, y) ** lower
    h = a * Polynomial.variable(varset, z) + B
    return KernelPair(Polynomial.variable(varset, x), h)


def random_triangular_derivation(
    varset: VarSet,
    rng: random.Random,
    degree: int = MAX_TRIANGULAR_DEGREE,
    height: int = MAX_HEIGHT,
) -> Derivation:
    kernel = random_triangular_kernel(varset, rng, degree, height)
    return jacobian_derivation(kernel.f, kernel.g, varset)


def conjugated_kernel(sigma: Automorphism, kernel: KernelPair) -> KernelPair:
    """Il nucleo di sigma X sigma^-1 e' sigma(nucleo di X)."""
    return KernelPair(sigma.apply(kernel.f), sigma.apply(kernel.g))

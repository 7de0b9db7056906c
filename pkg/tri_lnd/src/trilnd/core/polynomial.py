# -----------------------------------------------------------------------------
# File: trilnd/core/polynomial.py
# -----------------------------------------------------------------------------

"""Polinomi esatti a coefficienti razionali.

Il valore universale del sistema: un polinomio e' un elemento di un anello
sympy ``QQ[v1, ..., vn]`` (ordine graded-lex sulle variabili del VarSet),
avvolto in un oggetto immutabile che conosce il proprio insieme di variabili.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from trilnd.exceptions import VarSetMismatchError, ZeroPolynomialError

Rational = QQ.dtype
Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction, Rational]

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
# Etichette interne dell'eliminazione, mai prodotte dalla grammatica.
_TAG_NAME = re.compile(r"_tag_\d+\Z")
TAG_PREFIX = "_tag_"


def to_rational(value: Union[Scalar, str]) -> Rational:
    """Converte interi, Fraction, stringhe "a/b" e razionali sympy in QQ."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleano non ammesso come coefficiente")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ.convert(value)


def format_rational(value: Rational) -> str:
    """Stampa ``a/b`` con b > 0, gli interi senza ``/1``."""
    numerator = int(QQ.numer(value))
    denominator = int(QQ.denom(value))
    return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"


@lru_cache(maxsize=None)
def _grlex_ring(names: Tuple[str, ...]) -> PolyRing:
    return PolyRing(tuple(Symbol(name) for name in names), QQ, grlex)


@dataclass(frozen=True)
class VarSet:
    """Lista ordinata di nomi di variabile; l'ordine definisce il ranking."""

    names: Tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise VarSetMismatchError(f"Nomi di variabile duplicati: {names}")
        for name in names:
            if not isinstance(name, str) or not (_NAME.match(name) or _TAG_NAME.match(name)):
                raise VarSetMismatchError(f"Nome di variabile non valido: {name!r}")

    @classmethod
    def of(cls, *names: str) -> "VarSet":
        return cls(tuple(names))

    @property
    def ring(self) -> PolyRing:
        return _grlex_ring(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise VarSetMismatchError(f"Variabile {name!r} assente da {self.names}") from None

    def union(self, other: Union["VarSet", Iterable[str]]) -> "VarSet":
        extra = other.names if isinstance(other, VarSet) else tuple(other)
        return VarSet(self.names + tuple(name for name in extra if name not in self.names))

    def issubset(self, other: "VarSet") -> bool:
        return set(self.names) <= set(other.names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __str__(self) -> str:
        return "(" + ", ".join(self.names) + ")"


def _reindex(element: PolyElement, source: VarSet, target: VarSet) -> PolyElement:
    """Ricolloca i termini di ``element`` dall'anello di ``source`` a quello di ``target``."""
    if source == target:
        return element
    positions = {name: target.names.index(name) for name in source.names if name in target.names}
    width = len(target)
    terms = {}
    for monom, coeff in element.items():
        new_monom = [0] * width
        for name, exponent in zip(source.names, monom):
            if not exponent:
                continue
            if name not in positions:
                raise VarSetMismatchError(f"Variabile {name!r} assente da {target.names}")
            new_monom[positions[name]] = exponent
        terms[tuple(new_monom)] = coeff
    return target.ring.from_dict(terms) if terms else target.ring.zero


class Polynomial:
    """Polinomio immutabile su Q in un VarSet fissato.

    L'uguaglianza e' strutturale: stesso VarSet e stessi termini canonici.
    """

    __slots__ = ("_varset", "_element", "_hash")

    def __init__(self, varset: VarSet, element: PolyElement):
        if element.ring != varset.ring:
            raise VarSetMismatchError(f"Elemento fuori dall'anello di {varset}")
        self._varset = varset
        self._element = element
        self._hash: Optional[int] = None

    # ---- Costruttori ----

    @classmethod
    def zero(cls, varset: VarSet) -> "Polynomial":
        return cls(varset, varset.ring.zero)

    @classmethod
    def one(cls, varset: VarSet) -> "Polynomial":
        return cls(varset, varset.ring.one)

    @classmethod
    def constant(cls, varset: VarSet, value: Union[Scalar, str]) -> "Polynomial":
        return cls(varset, varset.ring.ground_new(to_rational(value)))

    @classmethod
    def variable(cls, varset: VarSet, name: str) -> "Polynomial":
        return cls(varset, varset.ring.gens[varset.index(name)])

    @classmethod
    def variables(cls, varset: VarSet) -> Tuple["Polynomial", ...]:
        return tuple(cls(varset, gen) for gen in varset.ring.gens)

    @classmethod
    def from_terms(cls, varset: VarSet, terms: Mapping[Sequence[int], Union[Scalar, str]]) -> "Polynomial":
        data = {}
        for monom, coeff in terms.items():
            monom = tuple(int(e) for e in monom)
            if len(monom) != len(varset) or any(e < 0 for e in monom):
                raise VarSetMismatchError(f"Esponente {monom} incompatibile con {varset}")
            value = to_rational(coeff)
            if value:
                data[monom] = data.get(monom, QQ.zero) + value
        data = {m: c for m, c in data.items() if c}
        return cls(varset, varset.ring.from_dict(data) if data else varset.ring.zero)

    # ---- Accesso ----

    @property
    def varset(self) -> VarSet:
        return self._varset

    @property
    def element(self) -> PolyElement:
        return self._element

    def terms(self) -> Dict[Monomial, Rational]:
        return dict(self._element)

    def sorted_terms(self) -> List[Tuple[Monomial, Rational]]:
        """Termini in ordine graded-lex decrescente."""
        return list(self._element.terms())

    @property
    def is_zero(self) -> bool:
        return not self._element

    @property
    def is_constant(self) -> bool:
        return all(not any(monom) for monom in self._element)

    def constant_value(self) -> Rational:
        if not self.is_constant:
            raise ValueError(f"{self} non e' costante")
        return self._element.get(self._varset.ring.zero_monom, QQ.zero)

    def constant_term(self) -> Rational:
        return self._element.get(self._varset.ring.zero_monom, QQ.zero)

    @property
    def total_degree(self) -> int:
        """Grado totale; -1 per il polinomio nullo."""
        return max((sum(monom) for monom in self._element), default=-1)

    def degree(self, name: str) -> int:
        """Grado in ``name``; -1 per il polinomio nullo."""
        index = self._varset.index(name)
        return max((monom[index] for monom in self._element), default=-1)

    def variables_used(self) -> Tuple[str, ...]:
        used = [False] * len(self._varset)
        for monom in self._element:
            for index, exponent in enumerate(monom):
                if exponent:
                    used[index] = True
        return tuple(name for name, flag in zip(self._varset.names, used) if flag)

    @property
    def leading_monomial(self) -> Monomial:
        if self.is_zero:
            raise ZeroPolynomialError("Il polinomio nullo non ha monomio direttivo")
        return self._element.LM

    @property
    def leading_coefficient(self) -> Rational:
        if self.is_zero:
            raise ZeroPolynomialError("Il polinomio nullo non ha coefficiente direttivo")
        return self._element.LC

    # ---- Aritmetica ----

    def embed(self, target: VarSet) -> "Polynomial":
        """Immerge il polinomio in un VarSet che contiene tutte le sue variabili."""
        if target == self._varset:
            return self
        missing = [name for name in self.variables_used() if name not in target]
        if missing:
            raise VarSetMismatchError(f"Variabili {missing} assenti da {target}")
        return Polynomial(target, _reindex(self._element, self._varset, target))

    def rename(self, mapping: Mapping[str, str], target: Optional[VarSet] = None) -> "Polynomial":
        """Rinomina le variabili (senza fonderle) e ricolloca nel VarSet ``target``."""
        renamed = VarSet(tuple(mapping.get(name, name) for name in self._varset.names))
        moved = Polynomial(renamed, renamed.ring.from_dict(dict(self._element)) if self._element else renamed.ring.zero)
        return moved.embed(target) if target is not None else moved

    def align(self, other: Union["Polynomial", Scalar]) -> Tuple[VarSet, PolyElement, PolyElement]:
        if isinstance(other, Polynomial):
            if other._varset == self._varset:
                return self._varset, self._element, other._element
            if other._varset.issubset(self._varset):
                return self._varset, self._element, other.embed(self._varset)._element
            if self._varset.issubset(other._varset):
                return other._varset, self.embed(other._varset)._element, other._element
            raise VarSetMismatchError(f"VarSet incompatibili: {self._varset} e {other._varset}")
        ring = self._varset.ring
        return self._varset, self._element, ring.ground_new(to_rational(other))

    def __add__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        varset, a, b = self.align(other)
        return Polynomial(varset, a + b)

    __radd__ = __add__

    def __sub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        varset, a, b = self.align(other)
        return Polynomial(varset, a - b)

    def __rsub__(self, other: Scalar) -> "Polynomial":
        varset, a, b = self.align(other)
        return Polynomial(varset, b - a)

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        varset, a, b = self.align(other)
        return Polynomial(varset, a * b)

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self._varset, -self._element)

    def __pos__(self) -> "Polynomial":
        return self

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Esponente intero non negativo richiesto")
        return Polynomial(self._varset, self._element ** exponent)

    def __truediv__(self, scalar: Scalar) -> "Polynomial":
        if isinstance(scalar, Polynomial):
            raise TypeError("Per dividere polinomi usare exact_divide")
        value = to_rational(scalar)
        if not value:
            raise ZeroDivisionError("divisione per zero")
        return Polynomial(self._varset, self._element.quo_ground(value))

    def scale(self, scalar: Union[Scalar, str]) -> "Polynomial":
        return Polynomial(self._varset, self._element * to_rational(scalar))

    def diff(self, name: str) -> "Polynomial":
        return Polynomial(self._varset, self._element.diff(self._varset.ring.gens[self._varset.index(name)]))

    def integrate(self, name: str) -> "Polynomial":
        """Primitiva rispetto a ``name`` con costante nulla."""
        index = self._varset.index(name)
        terms = {}
        for monom, coeff in self._element.items():
            exponent = monom[index] + 1
            new_monom = monom[:index] + (exponent,) + monom[index + 1:]
            terms[new_monom] = coeff / QQ(exponent)
        return Polynomial.from_terms(self._varset, terms)

    def coefficient(self, name: str, degree: int) -> "Polynomial":
        """Coefficiente di ``name^degree`` come polinomio nelle altre variabili."""
        return Polynomial(self._varset, self._element.coeff_wrt(self._varset.index(name), degree))

    def coefficients_in(self, name: str) -> Dict[int, "Polynomial"]:
        """Sviluppo in potenze di ``name``: grado -> coefficiente (non nullo)."""
        return {
            degree: self.coefficient(name, degree)
            for degree in range(self.degree(name) + 1)
            if not self.coefficient(name, degree).is_zero
        }

    def homogeneous_part(self, degree: int) -> "Polynomial":
        terms = {m: c for m, c in self._element.items() if sum(m) == degree}
        return Polynomial(self._varset, self._varset.ring.from_dict(terms) if terms else self._varset.ring.zero)

    def remainder(self, modulus: "Polynomial") -> "Polynomial":
        """Resto della divisione per un singolo polinomio (unico: un generatore e' una base)."""
        varset, a, b = self.align(modulus)
        if not b:
            raise ZeroDivisionError("modulo nullo")
        return Polynomial(varset, a.rem(b))

    def substitute(
        self,
        bindings: Mapping[str, Union["Polynomial", Scalar]],
        target: Optional[VarSet] = None,
    ) -> "Polynomial":
        """Sostituisce le variabili legate; quelle libere sono trasportate nel VarSet ``target``."""
        used = self.variables_used()
        free = [name for name in used if name not in bindings]
        if target is None:
            images = [value._varset for value in bindings.values() if isinstance(value, Polynomial)]
            target = images[0] if images else self._varset
            for varset in images[1:]:
                target = target.union(varset)
            target = target.union(free)
        ring = target.ring
        values: Dict[int, PolyElement] = {}
        for index, name in enumerate(self._varset.names):
            if name not in used:
                continue
            if name in bindings:
                value = bindings[name]
                if isinstance(value, Polynomial):
                    values[index] = value.embed(target)._element
                else:
                    values[index] = ring.ground_new(to_rational(value))
            else:
                values[index] = ring.gens[target.index(name)]
        powers: Dict[Tuple[int, int], PolyElement] = {}

        def power(index: int, exponent: int) -> PolyElement:
            key = (index, exponent)
            if key not in powers:
                powers[key] = values[index] if exponent == 1 else power(index, exponent - 1) * values[index]
            return powers[key]

        result = ring.zero
        for monom, coeff in self._element.items():
            term = ring.ground_new(coeff)
            for index, exponent in enumerate(monom):
                if exponent:
                    term = term * power(index, exponent)
            result += term
        return Polynomial(target, result)

    def normalized(self) -> Tuple[Rational, "Polynomial"]:
        """Restituisce ``(unita', p)`` con p primitivo a coefficienti interi,
        coefficiente direttivo (graded-lex) positivo e ``unita' * p == self``."""
        if self.is_zero:
            raise ZeroPolynomialError("Il polinomio nullo non si normalizza")
        numerators = [abs(int(QQ.numer(c))) for c in self._element.values()]
        denominators = [int(QQ.denom(c)) for c in self._element.values()]
        content = QQ(math.gcd(*numerators), math.lcm(*denominators))
        if self.leading_coefficient < 0:
            content = -content
        return content, Polynomial(self._varset, self._element.quo_ground(content))

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return Polynomial(self._varset, self._element.monic())

    # ---- Protocollo ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._varset == other._varset and self._element == other._element

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._varset.names, frozenset(self._element.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._element)

    def to_text(self) -> str:
        return format_polynomial(self)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, {self._varset})"


def arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Somma, differenza o prodotto con immersione automatica dei VarSet."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"Operazione non supportata: {op}")


def _format_monomial(varset: VarSet, monom: Monomial) -> str:
    factors = []
    for name, exponent in zip(varset.names, monom):
        if exponent == 1:
            factors.append(name)
        elif exponent > 1:
            factors.append(f"{name}^{exponent}")
    return "*".join(factors)


def format_polynomial(p: Polynomial) -> str:
    """Rende il polinomio nella grammatica testuale (termini in graded-lex decrescente)."""
    if p.is_zero:
        return "0"
    pieces: List[str] = []
    for monom, coeff in p.sorted_terms():
        monomial = _format_monomial(p.varset, monom)
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if not monomial:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_rational(magnitude)}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)

# -----------------------------------------------------------------------------
# File: trilnd/core/factorization.py
# -----------------------------------------------------------------------------

"""MCD, divisione esatta, fattorizzazione e resto cinese sui polinomi razionali.

Convenzione di normalizzazione: ogni fattore irriducibile e' primitivo a
coefficienti interi con coefficiente direttivo positivo in graded-lex sul
proprio VarSet; "uguale a meno di unita'" significa uguale dopo questa
normalizzazione.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import integer_nthroot
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement

from trilnd.core.polynomial import Polynomial, Rational, VarSet
from trilnd.exceptions import (
    FactorizationError,
    NonCoprimeModuliError,
    NonExactDivisionError,
    PolynomialDivisionByZero,
    ZeroPolynomialError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Factorization:
    """``unit * prod(f**m)`` con fattori irriducibili normalizzati e distinti."""

    unit: Rational
    factors: Tuple[Tuple[Polynomial, int], ...]

    def expand(self, varset: Optional[VarSet] = None) -> Polynomial:
        if not self.factors and varset is None:
            raise ValueError("VarSet necessario per ricostruire una costante")
        target = varset or self.factors[0][0].varset
        result = Polynomial.constant(target, self.unit)
        for factor, multiplicity in self.factors:
            result = result * factor.embed(target) ** multiplicity
        return result

    @property
    def distinct(self) -> Tuple[Polynomial, ...]:
        return tuple(factor for factor, _ in self.factors)


def _factor_sort_key(p: Polynomial) -> tuple:
    return (p.total_degree, p.varset.ring.order(p.leading_monomial), p.to_text())


def gcd_poly(a: Polynomial, b: Polynomial, keep_content: bool = False) -> Polynomial:
    """
    MCD normalizzato di due polinomi.

    Args:
        a: Primo polinomio.
        b: Secondo polinomio.
        keep_content: Se vero moltiplica il risultato per il MCD dei contenuti razionali.

    Returns:
        Il MCD primitivo con coefficiente direttivo positivo (1 se costante).
    """
    if a.is_zero and b.is_zero:
        raise ZeroPolynomialError("MCD di due polinomi nulli")
    varset, ea, eb = a.align(b)
    if a.is_zero or b.is_zero:
        g = Polynomial(varset, eb if a.is_zero else ea)
    else:
        g = Polynomial(varset, ea.gcd(eb))
    _, g = g.normalized()
    if keep_content:
        contents = [p.normalized()[0] for p in (a, b) if not p.is_zero]
        numerator = math.gcd(*(int(QQ.numer(value)) for value in contents))
        denominator = math.lcm(*(int(QQ.denom(value)) for value in contents))
        g = g.scale(QQ(numerator, denominator))
    return g


def gcd_many(polys: Sequence[Polynomial]) -> Polynomial:
    """MCD normalizzato di una lista (i nulli sono ignorati)."""
    nonzero = [p for p in polys if not p.is_zero]
    if not nonzero:
        raise ZeroPolynomialError("MCD di soli polinomi nulli")
    result = nonzero[0].normalized()[1]
    for p in nonzero[1:]:
        if result.is_constant:
            break
        result = gcd_poly(result, p)
    return result


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quoziente esatto ``a / b``; distingue ``b == 0`` dalla divisione non esatta."""
    if b.is_zero:
        raise PolynomialDivisionByZero("Divisione per il polinomio nullo")
    varset, ea, eb = a.align(b)
    try:
        return Polynomial(varset, ea.exquo(eb))
    except ExactQuotientFailed:
        raise NonExactDivisionError(f"{b} non divide {a}") from None


def divides(b: Polynomial, a: Polynomial) -> bool:
    try:
        exact_divide(a, b)
    except NonExactDivisionError:
        return False
    return True


def _factor(p: Polynomial) -> Factorization:
    if p.is_zero:
        raise ZeroPolynomialError("Fattorizzazione del polinomio nullo")
    unit, raw = p.element.factor_list()
    merged: Dict[Polynomial, int] = {}
    for element, multiplicity in raw:
        factor_unit, factor = Polynomial(p.varset, element).normalized()
        unit = unit * factor_unit ** multiplicity
        if factor.is_constant:
            continue
        merged[factor] = merged.get(factor, 0) + multiplicity
    factors = tuple(sorted(merged.items(), key=lambda item: _factor_sort_key(item[0])))
    result = Factorization(unit=QQ.convert(unit), factors=factors)
    logger.debug(f"Fattorizzato {p} in {len(factors)} fattori irriducibili")
    return result


def factor_univariate(c: Polynomial) -> Factorization:
    """Fattorizzazione completa su Q di un polinomio in una variabile."""
    if len(c.variables_used()) > 1:
        raise FactorizationError(f"{c} non e' univariato")
    return _factor(c)


def factor_bivariate(c: Polynomial) -> Factorization:
    """Fattorizzazione completa su Q di un polinomio in (al piu') due variabili."""
    if len(c.variables_used()) > 2:
        raise FactorizationError(f"{c} usa piu' di due variabili")
    return _factor(c)


def squarefree_part(c: Polynomial) -> Polynomial:
    """Prodotto dei fattori irriducibili distinti, normalizzato."""
    if c.is_zero:
        raise ZeroPolynomialError("Parte squarefree del polinomio nullo")
    if c.is_constant:
        return Polynomial.one(c.varset)
    return Polynomial(c.varset, c.element.sqf_part()).normalized()[1]


# ---- Aritmetica univariata in K[u] ----


def _univariate(p: Polynomial, name: str) -> PolyElement:
    if any(other != name for other in p.variables_used()):
        raise FactorizationError(f"{p} non e' un polinomio nella sola {name}")
    return p.embed(VarSet((name,))).element


def _common_variable(polys: Sequence[Polynomial]) -> str:
    names = {name for p in polys for name in p.variables_used()}
    if len(names) > 1:
        raise FactorizationError(f"Polinomi non univariati: variabili {sorted(names)}")
    if names:
        return names.pop()
    return polys[0].varset.names[0]


def inverse_mod(a: Polynomial, modulus: Polynomial) -> Polynomial:
    """Inverso di ``a`` in K[u]/(modulus) tramite Euclide esteso."""
    name = _common_variable([a, modulus])
    ea, em = _univariate(a, name), _univariate(modulus, name)
    s, _, h = ea.gcdex(em)
    if not h or h.degree() > 0:
        raise NonCoprimeModuliError(f"{a} non e' invertibile modulo {modulus}")
    inverse = (s.quo_ground(h.LC)).rem(em)
    return Polynomial(VarSet((name,)), inverse).embed(a.varset)


def crt_univariate(residues: Sequence[Polynomial], moduli: Sequence[Polynomial]) -> Polynomial:
    """
    Resto cinese in K[u].

    Args:
        residues: Residui r_i.
        moduli: Moduli m_i a due a due coprimi.

    Returns:
        L'unico r con deg r < deg(prod m_i) e r = r_i mod m_i.
    """
    if len(residues) != len(moduli) or not moduli:
        raise ValueError("Servono tanti residui quanti moduli (almeno uno)")
    if any(m.is_zero for m in moduli):
        raise PolynomialDivisionByZero("Modulo nullo nel resto cinese")
    polys = list(residues) + list(moduli)
    name = _common_variable(polys)
    target = polys[0].varset
    result = _univariate(residues[0], name).rem(_univariate(moduli[0], name))
    accumulated = _univariate(moduli[0], name)
    for residue, modulus in zip(residues[1:], moduli[1:]):
        em = _univariate(modulus, name)
        s, _, h = accumulated.gcdex(em)
        if h.degree() > 0:
            raise NonCoprimeModuliError(f"Moduli non coprimi: fattore comune {h}")
        correction = ((_univariate(residue, name) - result) * s.quo_ground(h.LC)).rem(em)
        result = result + accumulated * correction
        accumulated = accumulated * em
        result = result.rem(accumulated)
    return Polynomial(VarSet((name,)), result).embed(target)


# ---- Forme omogenee ----


def homogeneous_component(p: Polynomial, degree: int) -> Polynomial:
    """Componente omogenea di grado totale ``degree``."""
    return p.homogeneous_part(degree)


def form_kth_root(form: Polynomial, k: int) -> Optional[Polynomial]:
    """
    Radice k-esima razionale di una forma omogenea, se esiste.

    Per k pari si restituisce la radice con unita' positiva; None se la radice
    non esiste su Q.
    """
    if k < 1:
        raise ValueError("k deve essere positivo")
    if form.is_zero:
        return form
    if len({sum(monom) for monom in form.terms()}) > 1:
        raise ValueError(f"{form} non e' omogeneo")
    if k == 1:
        return form
    if form.is_constant:
        root = _rational_root(form.constant_value(), k)
        return None if root is None else Polynomial.constant(form.varset, root)
    factorization = _factor(form)
    if any(multiplicity % k for _, multiplicity in factorization.factors):
        return None
    unit_root = _rational_root(factorization.unit, k)
    if unit_root is None:
        return None
    result = Polynomial.constant(form.varset, unit_root)
    for factor, multiplicity in factorization.factors:
        result = result * factor ** (multiplicity // k)
    return result


def _rational_root(value: Rational, k: int) -> Optional[Rational]:
    numerator = int(QQ.numer(value))
    denominator = int(QQ.denom(value))
    sign = 1
    if numerator < 0:
        if k % 2 == 0:
            return None
        sign, numerator = -1, -numerator
    num_root, num_exact = integer_nthroot(numerator, k)
    den_root, den_exact = integer_nthroot(denominator, k)
    if not (num_exact and den_exact):
        return None
    return QQ(sign * int(num_root), int(den_root))


def reduce_coefficients(p: Polynomial, modulus: Polynomial) -> Polynomial:
    """Riduce i coefficienti (polinomi nella variabile del modulo) modulo ``modulus``."""
    return p.remainder(modulus)


def prime_factors(c: Polynomial) -> List[Polynomial]:
    return list(_factor(c).distinct) if not c.is_constant else []

# -----------------------------------------------------------------------------
# File: trilnd/core/rank.py
# -----------------------------------------------------------------------------

"""Classificazione del rango di una derivazione irriducibile localmente nilpotente.

Rango 1 sse il generatore del plinth e' una costante; rango 2 sse
``c = l(u)`` con ``u`` coordinata del nucleo K[f, g]; rango 3 altrimenti.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from trilnd.core.derivation import (
    Derivation,
    SemiDecisionBounds,
    bivariate_jacobian,
    is_locally_nilpotent,
    local_slice,
)
from trilnd.core.factorization import (
    exact_divide,
    factor_univariate,
    form_kth_root,
    gcd_many,
    squarefree_part,
)
from trilnd.core.groebner import subalgebra_membership, substitute_tags
from trilnd.core.plinth import KERNEL_VARSET, PlinthCertificate
from trilnd.core.polynomial import Polynomial, Rational, VarSet, format_rational
from trilnd.exceptions import (
    InternalInconsistencyError,
    InvalidInputError,
    NonExactDivisionError,
)

logger = logging.getLogger(__name__)

OUTER_VARSET = VarSet(("u",))


# ---- Decomposizione uni-multivariata ----


@dataclass(frozen=True)
class UniMultivariateDecomposition:
    """``C = ell(U)`` con ``ell`` in K[u] di grado ``k`` e ``U`` normalizzato."""

    ell: Polynomial
    U: Polynomial
    k: int

    @property
    def decomposed(self) -> bool:
        return self.k > 1


def _divisors_descending(n: int) -> List[int]:
    return [k for k in range(n, 1, -1) if n % k == 0]


def _try_degree(C: Polynomial, k: int) -> Optional[Tuple[Dict[int, Rational], Polynomial]]:
    """Tenta ``C = ell(U)`` con deg ell = k; restituisce (coefficienti di ell, U) o None."""
    n = C.total_degree
    m = n // k
    lead_unit, lead = C.homogeneous_part(n).normalized()
    top = form_kth_root(lead, k)
    if top is None:
        return None
    # omogenee di U dall'alto: U_{m-i} = (C_{n-i}/a_k - [U'^k]_{n-i}) / (k U_m^{k-1})
    U = top
    pivot = top ** (k - 1) * k
    for i in range(1, m):
        target = C.homogeneous_part(n - i) / lead_unit - (U ** k).homogeneous_part(n - i)
        if target.is_zero:
            continue
        try:
            U = U + exact_divide(target, pivot)
        except NonExactDivisionError:
            return None
    # coefficienti di ell dall'alto
    coefficients: Dict[int, Rational] = {}
    remainder = C
    for j in range(k, 0, -1):
        if remainder.total_degree > j * m:
            return None
        part = remainder.homogeneous_part(j * m)
        if part.is_zero:
            continue
        try:
            quotient = exact_divide(part, top ** j)
        except NonExactDivisionError:
            return None
        if not quotient.is_constant:
            return None
        coefficients[j] = quotient.constant_value()
        remainder = remainder - (U ** j).scale(coefficients[j])
    if not remainder.is_constant:
        return None
    if not remainder.is_zero:
        coefficients[0] = remainder.constant_value()
    return coefficients, U


def uni_multivariate_decompose(C: Polynomial) -> UniMultivariateDecomposition:
    """
    Decomposizione ``C = ell(U)`` con ``deg ell`` massimo.

    U e' normalizzato: primitivo, coefficiente direttivo positivo, termine noto
    nullo. Per ``k = 1`` (C gia' indecomponibile) ``ell`` e' lineare.

    Args:
        C: Polinomio non costante.

    Returns:
        La decomposizione, verificata ricostruendo ``ell(U)``.
    """
    if C.is_constant:
        raise InvalidInputError("La decomposizione richiede un polinomio non costante")
    found: Optional[Tuple[Dict[int, Rational], Polynomial]] = None
    k = 1
    for candidate in _divisors_descending(C.total_degree):
        found = _try_degree(C, candidate)
        if found is not None:
            k = candidate
            break
    if found is None:
        found = ({1: 1, 0: C.constant_term()}, C - C.constant_term())
    coefficients, U = found
    # U -> U - U(0) e normalizzazione; ell(t) -> ell(unit * t + shift)
    shift = U.constant_term()
    unit, U = (U - shift).normalized()
    t = Polynomial.variable(OUTER_VARSET, "u")
    inner = t.scale(unit) + shift
    ell = Polynomial.zero(OUTER_VARSET)
    for degree, value in coefficients.items():
        ell = ell + (inner ** degree).scale(value)
    if ell.substitute({"u": U}, U.varset) != C:
        raise InternalInconsistencyError(f"Ricostruzione ell(U) fallita per {C}")
    logger.debug(f"Decomposizione: {C} = ell(U), ell = {ell}, U = {U}, k = {k}")
    return UniMultivariateDecomposition(ell, U, k)


# ---- Test di coordinata nel piano ----


class CoordinateStatus(str, Enum):
    COORDINATE = "coordinate"
    NOT_COORDINATE = "not_coordinate"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CoordinateTest:
    status: CoordinateStatus
    mate: Optional[Polynomial] = None
    reason: str = ""


def _bivariate_slice(D: Derivation, U: Polynomial, bound: int) -> Optional[Polynomial]:
    """Fetta di D_U (D(P) = 1) per minimizzazione con nucleo K[U]; None se non esiste."""
    tags = [("T", U)]
    s = local_slice(D, bound)
    while True:
        image = D.apply(s)
        if image.is_constant:
            return s / image.constant_value()
        phi = subalgebra_membership(image, tags)
        if phi is None:
            raise InternalInconsistencyError(f"D(s) = {image} non sta in K[U]")
        for prime in factor_univariate(phi).distinct:
            q = substitute_tags(prime, tags).embed(D.varset)
            H = subalgebra_membership(s, tags, modulus=q)
            if H is not None:
                s = exact_divide(s - substitute_tags(H, tags).embed(D.varset), q)
                break
        else:
            return None


def bivariate_coordinate_test(
    U: Polynomial,
    bounds: SemiDecisionBounds = SemiDecisionBounds(),
) -> CoordinateTest:
    """
    U e' coordinata di K[F, G] sse MCD(dU/dF, dU/dG) e' costante e D_U e'
    localmente nilpotente; la fetta di D_U e' allora il compagno P.
    """
    if U.is_constant:
        raise InvalidInputError("Una costante non e' una coordinata")
    varset = KERNEL_VARSET if U.varset.issubset(KERNEL_VARSET) else U.varset
    U = U.embed(varset)
    first, second = varset.names
    common = gcd_many([U.diff(first), U.diff(second)])
    if not common.is_constant:
        return CoordinateTest(CoordinateStatus.NOT_COORDINATE, reason=f"derivate con fattore comune {common}")
    D = bivariate_jacobian(U, varset)
    verdict = is_locally_nilpotent(D, bounds.nilpotency_bound, bounds.degree_cap)
    if verdict.refuted:
        cycle = verdict.cycle
        return CoordinateTest(
            CoordinateStatus.NOT_COORDINATE,
            reason=f"D_U non localmente nilpotente: D^{cycle.k}({cycle.variable}) = {format_rational(cycle.ratio)} D^{cycle.j}({cycle.variable})",
        )
    if not verdict.is_nilpotent:
        return CoordinateTest(CoordinateStatus.INDETERMINATE, reason=f"limite superato ({verdict.tripped})")
    P = _bivariate_slice(D, U, bounds.nilpotency_bound)
    if P is None:
        return CoordinateTest(CoordinateStatus.NOT_COORDINATE, reason="D_U senza fetta")
    _, mate = (P - P.constant_term()).normalized()
    jacobian = U.diff(first) * mate.diff(second) - U.diff(second) * mate.diff(first)
    if not jacobian.is_constant or jacobian.is_zero:
        raise InternalInconsistencyError(f"Compagno {mate} di {U} con jacobiano non costante")
    return CoordinateTest(CoordinateStatus.COORDINATE, mate=mate)


# ---- Rango ----


@dataclass(frozen=True)
class RankTwoData:
    u_FG: Polynomial
    u_xyz: Polynomial
    ell: Polynomial
    mate_FG: Polynomial
    mate_xyz: Polynomial
    squarefree: Polynomial  # d(u), parte squarefree di ell


@dataclass(frozen=True)
class RankVerdict:
    """Rango 1, 2 o 3; None quando una semidecisione ha superato il limite."""

    rank: Optional[int]
    data: Optional[RankTwoData] = None
    slice: Optional[Polynomial] = None
    decomposition: Optional[UniMultivariateDecomposition] = None
    reason: str = ""

    @property
    def indeterminate(self) -> bool:
        return self.rank is None


def classify_rank(
    X: Derivation,
    certificate: PlinthCertificate,
    bounds: SemiDecisionBounds = SemiDecisionBounds(),
) -> RankVerdict:
    """
    Rango di X dal certificato del plinth.

    Args:
        X: Derivazione irriducibile localmente nilpotente.
        certificate: Fetta minimale e generatore del plinth.
        bounds: Limiti della semidecisione per il test di coordinata.

    Returns:
        Il verdetto; per il rango 2 include u, ell, il compagno p e d(u).
    """
    if certificate.c_xyz.is_constant:
        slice_ = certificate.s / certificate.c_xyz.constant_value()
        if X.apply(slice_) != Polynomial.one(X.varset):
            raise InternalInconsistencyError(f"X({slice_}) != 1")
        logger.info(f"Rango 1: fetta {slice_}")
        return RankVerdict(1, slice=slice_)

    decomposition = uni_multivariate_decompose(certificate.c_FG)
    test = bivariate_coordinate_test(decomposition.U, bounds)
    if test.status is CoordinateStatus.INDETERMINATE:
        logger.warning(f"Rango indeterminato: {test.reason}")
        return RankVerdict(None, decomposition=decomposition, reason=test.reason)
    if test.status is CoordinateStatus.NOT_COORDINATE:
        logger.info(f"Rango 3: {decomposition.U} non e' coordinata ({test.reason})")
        return RankVerdict(3, decomposition=decomposition, reason=test.reason)

    tags = certificate.kernel.as_tags("F", "G")
    u_xyz = substitute_tags(decomposition.U, tags).embed(X.varset)
    mate_xyz = substitute_tags(test.mate, tags).embed(X.varset)
    data = RankTwoData(
        u_FG=decomposition.U,
        u_xyz=u_xyz,
        ell=decomposition.ell,
        mate_FG=test.mate,
        mate_xyz=mate_xyz,
        squarefree=squarefree_part(decomposition.ell),
    )
    logger.info(f"Rango 2: u = {u_xyz}, ell = {data.ell}, p = {mate_xyz}")
    return RankVerdict(2, data=data, decomposition=decomposition)

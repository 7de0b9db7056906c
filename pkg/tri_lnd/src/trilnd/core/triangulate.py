# -----------------------------------------------------------------------------
# File: trilnd/core/triangulate.py
# -----------------------------------------------------------------------------

"""Procedura di decisione della triangolabilita'.

Per ogni fattore primo c_i di c(u): base ridotta di c_i K[x,y,z] intersecato
K[u,p,s], certificato di decomposizione ``h_i = Q_i(u, s + l_i) + mu_i p``
modulo c_i, assemblaggio di v col resto cinese, completamento a (u, v, w) e
verifica finale per sostituzione esatta.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

from trilnd.core.derivation import (
    Derivation,
    KernelPair,
    NilpotencyVerdict,
    SemiDecisionBounds,
    commutator,
    irreducible_decomposition,
    is_locally_nilpotent,
    jacobian_derivation,
)
from trilnd.core.factorization import crt_univariate, exact_divide, factor_univariate
from trilnd.core.groebner import GroebnerBasis, MonomialOrder, intersect_subalgebra, subalgebra_membership
from trilnd.core.plinth import PlinthCertificate, plinth_generator, rewrite_in_kernel
from trilnd.core.polynomial import Polynomial, VarSet
from trilnd.core.rank import OUTER_VARSET, RankTwoData, RankVerdict, classify_rank
from trilnd.exceptions import (
    ContractViolationError,
    InternalInconsistencyError,
    InvalidInputError,
    NonExactDivisionError,
)

logger = logging.getLogger(__name__)

U_VARSET = OUTER_VARSET
UP_VARSET = VarSet(("u", "p"))
UV_VARSET = VarSet(("u", "v"))
UPS_VARSET = VarSet(("u", "p", "s"))

PRIME_ORDER = MonomialOrder.lex("s", "p", "u")
COMPLETION_ORDER = MonomialOrder.lex("p", "v", "u")


class Verdict(str, Enum):
    RANK1_TRIANGULAR = "rank1_triangular"
    TRIANGULABLE = "triangulable"
    NOT_TRIANGULABLE = "not_triangulable"
    INDETERMINATE = "indeterminate"
    INVALID_INPUT = "invalid_input"

    @property
    def positive(self) -> bool:
        return self in (Verdict.RANK1_TRIANGULAR, Verdict.TRIANGULABLE)


# ---- Tipi ----


@dataclass(frozen=True)
class ShapeOK:
    h: Polynomial
    basis: GroebnerBasis


@dataclass(frozen=True)
class ShapeFail:
    basis: GroebnerBasis


@dataclass(frozen=True)
class PrimeCertificate:
    """``h_i = Q_i(u, s + ell_i) + mu_i p`` modulo ``c_i``."""

    c_i: Polynomial
    n_i: int
    h_i: Polynomial
    ell_i: Polynomial
    mu_i: Polynomial
    Q_i: Polynomial


@dataclass(frozen=True)
class DecompositionFail:
    c_i: Polynomial
    h_i: Polynomial
    g: Polynomial
    p_degree: int
    reason: str
    n_i: int = 1


@dataclass(frozen=True)
class Completed:
    w: Polynomial
    Q: Polynomial
    basis: GroebnerBasis


@dataclass(frozen=True)
class NotCoordinate:
    basis: GroebnerBasis
    reason: str = ""


@dataclass(frozen=True)
class TriangularForm:
    """X(u) = 0, X(v) = c(u), X(w) = dQ/dv(u, v)."""

    u: Polynomial
    v: Polynomial
    w: Polynomial
    c: Polynomial
    Q: Polynomial
    alt_modulus: Polynomial
    inverse: Optional[Dict[str, Polynomial]] = None

    def triangular_images(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        """Le immagini (X(u), X(v), X(w)) come polinomi in (u, v)."""
        return (Polynomial.zero(UV_VARSET), self.c.embed(UV_VARSET), self.Q.embed(UV_VARSET).diff("v"))


@dataclass(frozen=True)
class FormCheck:
    ok: bool
    failures: Tuple[str, ...] = ()
    inverse: Optional[Dict[str, Polynomial]] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Witness:
    reason: str
    modulus: Optional[Polynomial] = None
    h: Optional[Polynomial] = None
    p_degree: Optional[int] = None
    modulus_xyz: Optional[Polynomial] = None
    basis: Tuple[str, ...] = ()


@dataclass(frozen=True)
class TriangulationReport:
    verdict: Verdict
    derivation: Derivation
    kernel: KernelPair
    nilpotency: NilpotencyVerdict
    bounds_used: SemiDecisionBounds
    prefactor: Optional[Polynomial] = None
    prefactor_expression: Optional[Polynomial] = None
    plinth: Optional[PlinthCertificate] = None
    rank: Optional[RankVerdict] = None
    primes: Tuple[Union[PrimeCertificate, DecompositionFail], ...] = ()
    form: Optional[TriangularForm] = None
    witness: Optional[Witness] = None
    diagnostics: Tuple[str, ...] = field(default_factory=tuple)


class BasisShapeError(ContractViolationError):
    """La base per un primo non ha la forma {c_i, h}; porta il rapporto con la base grezza."""

    def __init__(self, message: str, report: TriangulationReport):
        super().__init__(message, {"basis": "; ".join(report.witness.basis)})
        self.report = report


# ---- Passi per primo ----


def _prime_tags(data: RankTwoData, s: Polynomial) -> List[Tuple[str, Polynomial]]:
    return [("u", data.u_xyz), ("p", data.mate_xyz), ("s", s)]


def prime_basis(data: RankTwoData, s: Polynomial, c_i: Polynomial) -> Union[ShapeOK, ShapeFail]:
    """
    Base ridotta di ``c_i(u) K[x,y,z]`` intersecato ``K[u,p,s]`` in lex s > p > u.

    La forma attesa e' ``{c_i, h}`` con h monico in s.
    """
    c_i = c_i.embed(U_VARSET)
    q = _at_u(c_i, data)
    basis = intersect_subalgebra(q, _prime_tags(data, s), PRIME_ORDER, hints=[c_i])
    logger.debug(f"Base per il primo {c_i}: {basis.texts()}")
    if len(basis) != 2:
        return ShapeFail(basis)
    univariate = [g for g in basis if set(g.variables_used()) <= {"u"}]
    others = [g for g in basis if not set(g.variables_used()) <= {"u"}]
    if len(univariate) != 1 or univariate[0].embed(U_VARSET) != c_i.monic():
        return ShapeFail(basis)
    h = others[0].embed(UPS_VARSET)
    d = h.degree("s")
    if d < 1 or h.coefficient("s", d) != Polynomial.one(UPS_VARSET):
        return ShapeFail(basis)
    return ShapeOK(h, basis)


def _at_u(c_i: Polynomial, data: RankTwoData) -> Polynomial:
    """c_i(u) letto in x, y, z tramite u = u_xyz."""
    return c_i.embed(U_VARSET).substitute({"u": data.u_xyz}, data.u_xyz.varset)


def _reduce(p: Polynomial, modulus: Polynomial) -> Polynomial:
    return p.remainder(modulus.embed(p.varset))


def decompose_certificate(h: Polynomial, c_i: Polynomial, n_i: int = 1) -> Union[PrimeCertificate, DecompositionFail]:
    """
    Certificato ``h = Q(u, s + ell) + mu p`` in (K[u]/c_i)[p, s].

    Args:
        h: Polinomio monico in s, in (u, p, s).
        c_i: Fattore irriducibile in u.
        n_i: Molteplicita' di c_i (solo riportata).

    Returns:
        Il certificato, oppure DecompositionFail con il polinomio traslato g.
    """
    h = h.embed(UPS_VARSET)
    c_i = c_i.embed(U_VARSET)
    d = h.degree("s")
    if d < 1 or h.coefficient("s", d) != Polynomial.one(UPS_VARSET):
        raise InvalidInputError(f"{h} non e' monico in s")
    s = Polynomial.variable(UPS_VARSET, "s")
    p = Polynomial.variable(UPS_VARSET, "p")
    if d == 1:
        ell = _reduce(h.coefficient("s", 0) - p, c_i)
        mu = Polynomial.one(U_VARSET)
        Q = Polynomial.variable(UV_VARSET, "v")
    else:
        ell = _reduce(h.coefficient("s", d - 1) / d, c_i)
        g = _reduce(h.substitute({"s": s - ell}, UPS_VARSET), c_i)
        p_degree = g.degree("p")
        if p_degree > 1:
            return DecompositionFail(c_i, h, g, p_degree, f"grado {p_degree} in p", n_i)
        mu = g.coefficient("p", 1)
        if mu.is_zero:
            return DecompositionFail(c_i, h, g, p_degree, "coefficiente di p nullo modulo c_i", n_i)
        if not set(mu.variables_used()) <= {"u"}:
            return DecompositionFail(c_i, h, g, p_degree, f"coefficiente di p {mu} dipende da s", n_i)
        mu = mu.embed(U_VARSET)
        Q = g.coefficient("p", 0).rename({"s": "v"}).embed(UV_VARSET)
    ell = ell.embed(UP_VARSET)
    check = Q.substitute({"u": Polynomial.variable(UPS_VARSET, "u"), "v": s + ell}, UPS_VARSET) + mu * p - h
    if not _reduce(check, c_i).is_zero:
        raise InternalInconsistencyError(f"Certificato non congruente modulo {c_i}")
    logger.debug(f"Certificato per {c_i}: ell = {ell}, mu = {mu}, Q = {Q}")
    return PrimeCertificate(c_i, n_i, h, ell, mu, Q)


def assemble_v(
    certificates: Sequence[PrimeCertificate],
    s: Polynomial,
    data: RankTwoData,
) -> Tuple[Polynomial, Polynomial]:
    """
    ``ell(u, p)`` per resto cinese coefficiente per coefficiente in p, e
    ``v = s + ell(u, p)`` in (x, y, z).

    Returns:
        La coppia (ell, v).
    """
    if not certificates:
        raise ValueError("Serve almeno un certificato")
    moduli = [certificate.c_i for certificate in certificates]
    top = max(certificate.ell_i.degree("p") for certificate in certificates)
    ell = Polynomial.zero(UP_VARSET)
    p = Polynomial.variable(UP_VARSET, "p")
    for j in range(top + 1):
        residues = [certificate.ell_i.coefficient("p", j) for certificate in certificates]
        coefficient = crt_univariate(residues, moduli).embed(UP_VARSET)
        ell = ell + coefficient * p ** j
    v = s + ell.substitute({"u": data.u_xyz, "p": data.mate_xyz}, s.varset)
    return ell, v


def complete_system(
    data: RankTwoData,
    v: Polynomial,
    c: Optional[Polynomial] = None,
) -> Union[Completed, NotCoordinate]:
    """
    Completa (u, v) a un sistema di coordinate (u, v, w).

    v e' coordinata sse la base ridotta di ``c(u) K[x,y,z]`` intersecato
    ``K[u,v,p]`` (lex p > v > u) e' ``{c(u), p + Q(u, v)}``; allora
    ``w = (p + Q(u, v)) / c(u)``.
    """
    c = (c if c is not None else data.ell).embed(U_VARSET)
    ambient = v.varset
    q = c.substitute({"u": data.u_xyz}, ambient)
    tags = [("u", data.u_xyz), ("v", v), ("p", data.mate_xyz)]
    basis = intersect_subalgebra(q, tags, COMPLETION_ORDER, hints=[c])
    univariate = [g for g in basis if set(g.variables_used()) <= {"u"}]
    others = [g for g in basis if not set(g.variables_used()) <= {"u"}]
    if len(basis) != 2 or len(univariate) != 1 or univariate[0].embed(U_VARSET) != c.monic():
        return NotCoordinate(basis, "base non della forma {c(u), p + Q(u, v)}")
    other = others[0]
    if other.degree("p") != 1 or other.coefficient("p", 1) != Polynomial.one(other.varset):
        return NotCoordinate(basis, f"{other} non e' lineare monico in p")
    Q = (other - Polynomial.variable(other.varset, "p")).embed(UV_VARSET)
    numerator = data.mate_xyz + Q.substitute({"u": data.u_xyz, "v": v}, ambient)
    try:
        w = exact_divide(numerator, q)
    except NonExactDivisionError:
        raise InternalInconsistencyError(f"p + Q(u, v) non divisibile per c(u) = {q}") from None
    logger.info(f"Completamento: Q = {Q}, w = {w}")
    return Completed(w, Q, basis)


# ---- Verifica ----


def verify_form(X: Derivation, form: TriangularForm) -> FormCheck:
    """
    Verifica per sostituzione esatta X(u) = 0, X(v) = c(u), X(w) = dQ/dv(u, v)
    e che x, y, z stiano in K[u, v, w].
    """
    failures: List[str] = []
    bindings = {"u": form.u, "v": form.v}
    expected_v = form.c.embed(UV_VARSET).substitute(bindings, X.varset)
    expected_w = form.Q.embed(UV_VARSET).diff("v").substitute(bindings, X.varset)
    if not X.apply(form.u).is_zero:
        failures.append("X(u) != 0")
    if X.apply(form.v) != expected_v:
        failures.append("X(v) != c(u)")
    if X.apply(form.w) != expected_w:
        failures.append("X(w) != dQ/dv(u, v)")
    tags = [("u", form.u), ("v", form.v), ("w", form.w)]
    inverse: Dict[str, Polynomial] = {}
    for name in X.varset.names:
        expression = subalgebra_membership(Polynomial.variable(X.varset, name), tags)
        if expression is None:
            failures.append(f"{name} non sta in K[u, v, w]")
        else:
            inverse[name] = expression
    if failures:
        logger.warning(f"Verifica fallita: {', '.join(failures)}")
    return FormCheck(not failures, tuple(failures), inverse if not failures else None)


# ---- Supplementi ----


def companion_derivation(
    u: Polynomial,
    s: Polynomial,
    bounds: SemiDecisionBounds = SemiDecisionBounds(),
) -> Tuple[Derivation, NilpotencyVerdict]:
    """Y = Jac(u, s, .) con la sua semidecisione di nilpotenza."""
    Y = jacobian_derivation(u, s)
    return Y, is_locally_nilpotent(Y, bounds.nilpotency_bound, bounds.degree_cap)


def alternate_form(
    X: Derivation,
    report: TriangulationReport,
    r: Polynomial,
) -> Union[TriangularForm, NotCoordinate]:
    """
    Un'altra forma triangolare: ``v' = v + d(u) r(u, p)``, completata e verificata.
    """
    if report.form is None or report.rank is None or report.rank.data is None:
        raise InvalidInputError("Serve un rapporto triangolabile di rango 2")
    data = report.rank.data
    form = report.form
    d = data.squarefree.embed(U_VARSET)
    shift = (d.embed(UP_VARSET) * r.embed(UP_VARSET)).substitute({"u": data.u_xyz, "p": data.mate_xyz}, X.varset)
    completed = complete_system(data, form.v + shift)
    if isinstance(completed, NotCoordinate):
        return completed
    a = report.prefactor_expression if report.prefactor_expression is not None else Polynomial.one(U_VARSET)
    a = a.embed(U_VARSET)
    alternate = TriangularForm(
        u=form.u,
        v=form.v + shift,
        w=completed.w,
        c=(a * data.ell.embed(U_VARSET)),
        Q=a.embed(UV_VARSET) * completed.Q,
        alt_modulus=d,
    )
    check = verify_form(X, alternate)
    if not check:
        raise InternalInconsistencyError(f"Forma alternativa non verificata: {check.failures}")
    return replace(alternate, inverse=check.inverse)


# ---- Pipeline ----


def _rank_one_form(
    X: Derivation,
    kernel: KernelPair,
    prefactor: Polynomial,
    certificate: PlinthCertificate,
    slice_: Polynomial,
) -> Tuple[TriangularForm, Polynomial]:
    c0 = rewrite_in_kernel(prefactor, kernel)
    if c0 is None:
        raise InternalInconsistencyError(f"Il prefattore {prefactor} non sta nel nucleo")
    c0_uv = c0.rename({"F": "u", "G": "v"}).embed(UV_VARSET)
    form = TriangularForm(
        u=kernel.f.embed(X.varset),
        v=kernel.g.embed(X.varset),
        w=slice_,
        c=Polynomial.zero(U_VARSET),
        Q=c0_uv.integrate("v"),
        alt_modulus=Polynomial.one(U_VARSET),
    )
    return form, c0_uv


def _finish(X: Derivation, form: TriangularForm) -> TriangularForm:
    check = verify_form(X, form)
    if not check:
        raise InternalInconsistencyError(f"Verdetto positivo non verificato: {', '.join(check.failures)}")
    return replace(form, inverse=check.inverse)


def triangulate(
    source: Union[Derivation, KernelPair],
    kernel: Optional[KernelPair] = None,
    bounds: SemiDecisionBounds = SemiDecisionBounds(),
) -> TriangulationReport:
    """
    Decide se la derivazione e' triangolabile.

    Args:
        source: La derivazione, oppure direttamente la coppia (f, g) per Jac(f, g, .).
        kernel: Generatori del nucleo quando ``source`` e' una derivazione.
        bounds: Limiti delle semidecisioni.

    Returns:
        Il rapporto con verdetto, certificati ed eventuale forma triangolare.
    """
    if isinstance(source, KernelPair):
        kernel = source
        X = jacobian_derivation(kernel.f, kernel.g)
    else:
        X = source
        if kernel is None:
            raise InvalidInputError("Serve la forma jacobiana: generatori del nucleo mancanti")
    kernel.check(X)
    logger.info(f"Derivazione: {X}")

    nilpotency = is_locally_nilpotent(X, bounds.nilpotency_bound, bounds.degree_cap)
    if nilpotency.refuted:
        cycle = nilpotency.cycle
        raise ContractViolationError(
            "La derivazione non e' localmente nilpotente",
            {"variable": cycle.variable, "k": cycle.k, "j": cycle.j},
        )
    base = dict(derivation=X, kernel=kernel, nilpotency=nilpotency, bounds_used=bounds)
    if not nilpotency.is_nilpotent:
        logger.warning(f"Nilpotenza non decisa: limite '{nilpotency.tripped}' superato")
        return TriangulationReport(
            Verdict.INDETERMINATE, witness=Witness(f"semidecisione interrotta: {nilpotency.tripped}"), **base
        )

    prefactor, Y = irreducible_decomposition(X)
    certificate = plinth_generator(Y, kernel, bounds.nilpotency_bound)
    rank = classify_rank(Y, certificate, bounds)
    base.update(prefactor=prefactor, plinth=certificate, rank=rank)

    if rank.indeterminate:
        return TriangulationReport(Verdict.INDETERMINATE, witness=Witness(rank.reason), **base)

    if rank.rank == 1:
        form, c0_uv = _rank_one_form(X, kernel, prefactor, certificate, rank.slice)
        form = _finish(X, form)
        logger.info("Verdetto: rango 1, triangolare")
        return TriangulationReport(Verdict.RANK1_TRIANGULAR, prefactor_expression=c0_uv, form=form, **base)

    if rank.rank == 3:
        logger.info("Verdetto: rango 3, non triangolabile")
        return TriangulationReport(Verdict.NOT_TRIANGULABLE, witness=Witness(f"rango 3: {rank.reason}"), **base)

    data = rank.data
    base["plinth"] = certificate.with_squarefree_part(data.squarefree)
    if prefactor.is_constant:
        a = Polynomial.constant(U_VARSET, prefactor.constant_value())
    else:
        a = subalgebra_membership(prefactor, [("u", data.u_xyz)])
    if a is None:
        logger.info(f"Prefattore {prefactor} fuori da K[u]")
        return TriangulationReport(
            Verdict.NOT_TRIANGULABLE, witness=Witness(f"prefattore {prefactor} fuori da K[u]"), **base
        )
    a = a.embed(U_VARSET)
    base["prefactor_expression"] = a

    primes: List[Union[PrimeCertificate, DecompositionFail]] = []
    for c_i, n_i in factor_univariate(data.ell).factors:
        shape = prime_basis(data, certificate.s, c_i)
        if isinstance(shape, ShapeFail):
            reason = f"base per il primo {c_i} non della forma attesa"
            raw = tuple(g.embed(UPS_VARSET).to_text() for g in shape.basis)
            witness = Witness(reason, modulus=c_i, modulus_xyz=_at_u(c_i, data), basis=raw)
            report = TriangulationReport(Verdict.INVALID_INPUT, primes=tuple(primes), witness=witness, **base)
            raise BasisShapeError(reason, report)
        outcome = decompose_certificate(shape.h, c_i, n_i)
        primes.append(outcome)
        if isinstance(outcome, DecompositionFail):
            logger.info(f"Verdetto: non triangolabile al primo {c_i} ({outcome.reason})")
            witness = Witness(
                outcome.reason,
                modulus=c_i,
                h=outcome.h_i,
                p_degree=outcome.p_degree,
                modulus_xyz=_at_u(c_i, data),
            )
            return TriangulationReport(Verdict.NOT_TRIANGULABLE, primes=tuple(primes), witness=witness, **base)

    _, v = assemble_v(primes, certificate.s, data)
    completed = complete_system(data, v)
    if isinstance(completed, NotCoordinate):
        logger.info(f"Verdetto: v non e' coordinata ({completed.reason})")
        return TriangulationReport(
            Verdict.NOT_TRIANGULABLE, primes=tuple(primes), witness=Witness(completed.reason), **base
        )

    form = TriangularForm(
        u=data.u_xyz,
        v=v,
        w=completed.w,
        c=a * data.ell.embed(U_VARSET),
        Q=a.embed(UV_VARSET) * completed.Q,
        alt_modulus=data.squarefree.embed(U_VARSET),
    )
    form = _finish(X, form)

    companion, companion_verdict = companion_derivation(data.u_xyz, certificate.s, bounds)
    commuting = all(image.is_zero for image in commutator(Y, companion))
    diagnostics = (
        f"companion Jac(u, s, .): {companion_verdict.status.value}",
        f"[X, Jac(u, s, .)] = 0: {'si' if commuting else 'no'}",
    )
    logger.info("Verdetto: triangolabile")
    return TriangulationReport(
        Verdict.TRIANGULABLE, primes=tuple(primes), form=form, diagnostics=diagnostics, **base
    )

# -----------------------------------------------------------------------------
# File: trilnd/reader/export.py
# -----------------------------------------------------------------------------

"""Rapporti: costruzione, resa testuale/JSON e rilettura.

Ogni polinomio e' scritto nella grammatica testuale; la rilettura ri-analizza
ogni campo nel proprio VarSet e pretende di riottenere lo stesso testo.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

from trilnd.core.parser import parse_polynomial
from trilnd.core.polynomial import Polynomial, VarSet
from trilnd.core.triangulate import DecompositionFail, PrimeCertificate, TriangulationReport, Verdict
from trilnd.exceptions import ParsingError, ProblemFormatError

logger = logging.getLogger(__name__)

U = VarSet(("u",))
UV = VarSet(("u", "v"))
UP = VarSet(("u", "p"))
UPS = VarSet(("u", "p", "s"))
UVW = VarSet(("u", "v", "w"))
FG = VarSet(("F", "G"))


@dataclass(frozen=True)
class ReportFile:
    """Rapporto serializzabile; l'ordine dei campi e' quello di emissione."""

    verdict: str
    variables: Tuple[str, ...]
    kernel_generators: Optional[Tuple[str, str]] = None
    derivation: Dict[str, str] = field(default_factory=dict)
    prefactor: Optional[str] = None
    prefactor_expression: Optional[str] = None
    plinth_generator: Optional[str] = None
    plinth_generator_FG: Optional[str] = None
    minimal_local_slice: Optional[str] = None
    rank: Optional[int] = None
    u: Optional[str] = None
    p: Optional[str] = None
    v: Optional[str] = None
    w: Optional[str] = None
    c_of_u: Optional[str] = None
    Q_of_u_v: Optional[str] = None
    alt_modulus: Optional[str] = None
    triangular_images: Optional[Tuple[str, str, str]] = None
    inverse: Optional[Dict[str, str]] = None
    primes: Tuple[Dict[str, Any], ...] = ()
    witness: Optional[Dict[str, Any]] = None
    bounds_used: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Tuple[str, ...] = ()
    verified: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        for key in ("variables", "kernel_generators", "triangular_images", "primes", "diagnostics"):
            if data[key] is not None:
                data[key] = list(data[key])
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReportFile":
        known = {item.name for item in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ProblemFormatError(f"Campi di rapporto sconosciuti: {unknown}")
        if "verdict" not in data or "variables" not in data:
            raise ProblemFormatError("Rapporto senza 'verdict' o 'variables'")
        values = dict(data)
        for key in ("variables", "kernel_generators", "triangular_images", "diagnostics"):
            if values.get(key) is not None:
                values[key] = tuple(values[key])
        values["primes"] = tuple(values.get("primes") or ())
        return cls(**values)

    @property
    def varset(self) -> VarSet:
        return VarSet(tuple(self.variables))

    def polynomial(self, name: str) -> Optional[Polynomial]:
        """Rilegge un campo polinomiale di primo livello."""
        text = getattr(self, name)
        if text is None:
            return None
        return parse_polynomial(text, _field_varsets(self.varset)[name])


def _field_varsets(xyz: VarSet) -> Dict[str, VarSet]:
    return {
        "prefactor": xyz,
        "prefactor_expression": UV,
        "plinth_generator": xyz,
        "plinth_generator_FG": FG,
        "minimal_local_slice": xyz,
        "u": xyz,
        "p": xyz,
        "v": xyz,
        "w": xyz,
        "c_of_u": U,
        "Q_of_u_v": UV,
        "alt_modulus": U,
    }


_PRIME_VARSETS = {"c_i": U, "h_i": UPS, "ell_i": UP, "mu_i": U, "Q_i": UV, "g": UPS}
_WITNESS_VARSETS = {"modulus": U, "h": UPS}


def _text(p: Optional[Polynomial]) -> Optional[str]:
    return None if p is None else p.to_text()


def _prime_entry(outcome) -> Dict[str, Any]:
    if isinstance(outcome, PrimeCertificate):
        return {
            "status": "ok",
            "c_i": _text(outcome.c_i),
            "n_i": outcome.n_i,
            "h_i": _text(outcome.h_i),
            "ell_i": _text(outcome.ell_i),
            "mu_i": _text(outcome.mu_i),
            "Q_i": _text(outcome.Q_i),
        }
    if isinstance(outcome, DecompositionFail):
        return {
            "status": "decomposition_fail",
            "c_i": _text(outcome.c_i),
            "n_i": outcome.n_i,
            "h_i": _text(outcome.h_i),
            "g": _text(outcome.g),
            "p_degree": outcome.p_degree,
            "reason": outcome.reason,
        }
    raise TypeError(f"Esito per primo sconosciuto: {type(outcome).__name__}")


def build_report(report: TriangulationReport, verified: Optional[bool] = None) -> ReportFile:
    """
    Converte il rapporto della pipeline nel formato di emissione.

    Args:
        report: Esito di ``triangulate``.
        verified: Esito della ripassata di verifica (None se non eseguita).

    Returns:
        ReportFile con tutti i polinomi come stringhe.
    """
    X = report.derivation
    bounds = dict(report.bounds_used.as_dict())
    if report.nilpotency.tripped is not None:
        bounds["tripped"] = report.nilpotency.tripped
    bounds["iteration_counts"] = list(report.nilpotency.iteration_counts)
    values: Dict[str, Any] = {
        "verdict": report.verdict.value,
        "variables": X.varset.names,
        "kernel_generators": (report.kernel.f.to_text(), report.kernel.g.to_text()),
        "derivation": X.as_dict(),
        "prefactor": _text(report.prefactor),
        "prefactor_expression": _text(report.prefactor_expression),
        "bounds_used": bounds,
        "diagnostics": tuple(report.diagnostics),
        "primes": tuple(_prime_entry(outcome) for outcome in report.primes),
        "verified": verified,
    }
    if report.plinth is not None:
        values.update(
            plinth_generator=_text(report.plinth.c_xyz),
            plinth_generator_FG=_text(report.plinth.c_FG),
            minimal_local_slice=_text(report.plinth.s),
        )
    if report.rank is not None:
        values["rank"] = report.rank.rank
        if report.rank.data is not None:
            values.update(u=_text(report.rank.data.u_xyz), p=_text(report.rank.data.mate_xyz))
    if report.form is not None:
        form = report.form
        values.update(
            u=_text(form.u),
            v=_text(form.v),
            w=_text(form.w),
            c_of_u=_text(form.c),
            Q_of_u_v=_text(form.Q),
            alt_modulus=_text(form.alt_modulus),
            triangular_images=tuple(image.to_text() for image in form.triangular_images()),
        )
        if form.inverse is not None:
            values["inverse"] = {name: form.inverse[name].to_text() for name in X.varset.names}
    if report.witness is not None:
        witness = report.witness
        values["witness"] = {
            "reason": witness.reason,
            "modulus": _text(witness.modulus),
            "h": _text(witness.h),
            "p_degree": witness.p_degree,
            "modulus_xyz": _text(witness.modulus_xyz),
            "basis": list(witness.basis) or None,
        }
    return ReportFile(**values)


def invalid_input_report(variables: Tuple[str, ...], derivation: Dict[str, str], reason: str) -> ReportFile:
    """Rapporto per input fuori dalla forma jacobiana (nessun generatore del nucleo)."""
    return ReportFile(
        verdict=Verdict.INVALID_INPUT.value,
        variables=tuple(variables),
        derivation=dict(derivation),
        witness={"reason": reason, "modulus": None, "h": None, "p_degree": None, "modulus_xyz": None, "basis": None},
    )


def render_json(report: ReportFile) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False)


def render_text(report: ReportFile) -> str:
    """Resa leggibile degli stessi campi, in ordine fisso."""
    lines: List[str] = [f"verdict: {report.verdict}"]
    lines.append(f"variables: {', '.join(report.variables)}")
    if report.kernel_generators:
        lines.append(f"kernel: f = {report.kernel_generators[0]}, g = {report.kernel_generators[1]}")
    for name, image in report.derivation.items():
        lines.append(f"X({name}) = {image}")
    scalar_fields = (
        "prefactor",
        "prefactor_expression",
        "plinth_generator",
        "plinth_generator_FG",
        "minimal_local_slice",
        "rank",
        "u",
        "p",
        "v",
        "w",
        "c_of_u",
        "Q_of_u_v",
        "alt_modulus",
    )
    for name in scalar_fields:
        value = getattr(report, name)
        if value is not None:
            lines.append(f"{name}: {value}")
    if report.triangular_images:
        images = report.triangular_images
        lines.append(f"X(u) = {images[0]}, X(v) = {images[1]}, X(w) = {images[2]}")
    if report.inverse:
        for name, expression in report.inverse.items():
            lines.append(f"{name} = {expression}")
    for index, entry in enumerate(report.primes, 1):
        lines.append(f"prime {index}: " + ", ".join(f"{key} = {value}" for key, value in entry.items()))
    if report.witness:
        witness = {k: "; ".join(v) if isinstance(v, list) else v for k, v in report.witness.items() if v is not None}
        lines.append("witness: " + ", ".join(f"{k} = {v}" for k, v in witness.items()))
    if report.bounds_used:
        lines.append("bounds: " + ", ".join(f"{k} = {v}" for k, v in report.bounds_used.items()))
    for line in report.diagnostics:
        lines.append(f"diagnostic: {line}")
    if report.verified is not None:
        lines.append(f"verified: {'yes' if report.verified else 'no'}")
    return "\n".join(lines)


def _check_round_trip(text: Optional[str], varset: VarSet, where: str) -> None:
    if text is None:
        return
    try:
        reparsed = parse_polynomial(text, varset).to_text()
    except ParsingError as exc:
        raise ProblemFormatError(f"{where}: polinomio non rileggibile ({exc})") from exc
    if reparsed != text:
        raise ProblemFormatError(f"{where}: rilettura diversa", {"atteso": text, "ottenuto": reparsed})


def load_report(text: str) -> ReportFile:
    """
    Rilegge un rapporto JSON e ri-analizza ogni polinomio.

    Raises:
        ProblemFormatError: documento malformato o polinomio che non sopravvive alla rilettura.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"Rapporto JSON non valido: {exc.msg}", {"line": exc.lineno}) from exc
    if not isinstance(data, dict):
        raise ProblemFormatError("Il rapporto deve essere un oggetto JSON")
    report = ReportFile.from_dict(data)
    xyz = report.varset
    for name, varset in _field_varsets(xyz).items():
        _check_round_trip(getattr(report, name), varset, name)
    for index, generator in enumerate(report.kernel_generators or ()):
        _check_round_trip(generator, xyz, f"kernel_generators[{index}]")
    for name, image in report.derivation.items():
        _check_round_trip(image, xyz, f"derivation.{name}")
    for index, image in enumerate(report.triangular_images or ()):
        _check_round_trip(image, UV, f"triangular_images[{index}]")
    for name, expression in (report.inverse or {}).items():
        _check_round_trip(expression, UVW, f"inverse.{name}")
    for index, entry in enumerate(report.primes):
        for key, varset in _PRIME_VARSETS.items():
            _check_round_trip(entry.get(key), varset, f"primes[{index}].{key}")
    for key, varset in _WITNESS_VARSETS.items():
        _check_round_trip((report.witness or {}).get(key), varset, f"witness.{key}")
    _check_round_trip((report.witness or {}).get("modulus_xyz"), xyz, "witness.modulus_xyz")
    for index, entry in enumerate((report.witness or {}).get("basis") or ()):
        _check_round_trip(entry, UPS, f"witness.basis[{index}]")
    logger.debug(f"Rapporto riletto: verdetto {report.verdict}")
    return report

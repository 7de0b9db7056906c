# -----------------------------------------------------------------------------
# File: trilnd/reader/problem.py
# -----------------------------------------------------------------------------

"""Lettura dei file problema (JSON).

Formato::

    {
      "variables": ["x", "y", "z"],
      "kernel_generators": ["x", "y + 1/4*(x*z + y^2)^2"],
      "options": {"nilpotency_bound": 200, "degree_cap": 60, "format": "text"}
    }

In alternativa a ``kernel_generators`` si puo' dare ``derivation_images``
(``{"x": "...", "y": "...", "z": "..."}``); senza generatori del nucleo la
pipeline risponde ``invalid_input``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from trilnd.core.derivation import Derivation, KernelPair, SemiDecisionBounds, jacobian_derivation
from trilnd.core.parser import parse_polynomial
from trilnd.core.polynomial import Polynomial, VarSet
from trilnd.exceptions import PolynomialSyntaxError, ProblemFormatError, VarSetMismatchError

logger = logging.getLogger(__name__)

_TOP_LEVEL_KEYS = {"name", "variables", "kernel_generators", "derivation_images", "options"}
_OPTION_KEYS = {"nilpotency_bound", "degree_cap", "format"}


@dataclass(frozen=True)
class ProblemOptions:
    nilpotency_bound: Optional[int] = None
    degree_cap: Optional[int] = None
    format: Optional[str] = None

    def as_dict(self) -> Dict[str, Any]:
        return {key: value for key, value in self.__dict__.items() if value is not None}


@dataclass(frozen=True)
class ProblemFile:
    """Problema validato: polinomi gia' letti nel VarSet dichiarato."""

    varset: VarSet
    derivation: Derivation
    kernel: Optional[KernelPair] = None
    options: ProblemOptions = field(default_factory=ProblemOptions)
    name: str = ""
    source: Dict[str, Any] = field(default_factory=dict)

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.varset.names

    def bounds(self, defaults: SemiDecisionBounds = SemiDecisionBounds()) -> SemiDecisionBounds:
        return SemiDecisionBounds(
            self.options.nilpotency_bound or defaults.nilpotency_bound,
            self.options.degree_cap or defaults.degree_cap,
        )


def _offsets(text: str, value: str) -> Tuple[int, int]:
    """Riga e colonna (0-based) della stringa JSON ``value`` nel documento, se trovata."""
    encoded = json.dumps(value)
    position = text.find(encoded)
    if position < 0:
        return 0, 0
    position += 1  # apertura delle virgolette
    line = text.count("\n", 0, position)
    column = position - (text.rfind("\n", 0, position) + 1)
    return line, column


def _parse_field(text: str, value: Any, varset: VarSet, where: str) -> Polynomial:
    if not isinstance(value, str):
        raise ProblemFormatError(f"{where}: atteso un polinomio come stringa", {"valore": repr(value)})
    line, column = _offsets(text, value)
    try:
        return parse_polynomial(value, varset, line_offset=line, column_offset=column)
    except PolynomialSyntaxError as exc:
        exc.details["campo"] = where
        raise


def _positive_int(options: Dict[str, Any], key: str) -> Optional[int]:
    value = options.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ProblemFormatError(f"options.{key} deve essere un intero positivo", {"valore": value})
    return value


def parse_problem(text: str) -> ProblemFile:
    """
    Valida un documento problema.

    Args:
        text: Contenuto JSON.

    Returns:
        Il problema con derivazione costruita (forma jacobiana se ci sono i generatori).
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolynomialSyntaxError(f"JSON non valido: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(data, dict):
        raise ProblemFormatError("Il problema deve essere un oggetto JSON")
    unknown = sorted(set(data) - _TOP_LEVEL_KEYS)
    if unknown:
        raise ProblemFormatError(f"Campi sconosciuti: {unknown}")

    variables = data.get("variables")
    if not isinstance(variables, list) or len(variables) != 3 or not all(isinstance(v, str) for v in variables):
        raise ProblemFormatError("'variables' deve elencare esattamente tre nomi")
    if any(name.startswith("_") for name in variables):
        raise ProblemFormatError("I nomi di variabile non possono iniziare con '_'")
    try:
        varset = VarSet(tuple(variables))
    except VarSetMismatchError as exc:
        raise ProblemFormatError(f"Variabili non valide: {exc}") from exc

    has_kernel = "kernel_generators" in data
    has_images = "derivation_images" in data
    if has_kernel == has_images:
        raise ProblemFormatError("Serve esattamente uno tra 'kernel_generators' e 'derivation_images'")

    options = data.get("options", {}) or {}
    if not isinstance(options, dict) or set(options) - _OPTION_KEYS:
        raise ProblemFormatError(f"'options' ammette solo {sorted(_OPTION_KEYS)}")
    output_format = options.get("format")
    if output_format is not None and output_format not in ("text", "json"):
        raise ProblemFormatError("options.format deve essere 'text' o 'json'", {"valore": output_format})
    parsed_options = ProblemOptions(
        nilpotency_bound=_positive_int(options, "nilpotency_bound"),
        degree_cap=_positive_int(options, "degree_cap"),
        format=output_format,
    )

    kernel: Optional[KernelPair] = None
    if has_kernel:
        generators = data["kernel_generators"]
        if not isinstance(generators, list) or len(generators) != 2:
            raise ProblemFormatError("'kernel_generators' deve contenere due polinomi")
        f = _parse_field(text, generators[0], varset, "kernel_generators[0]")
        g = _parse_field(text, generators[1], varset, "kernel_generators[1]")
        kernel = KernelPair(f, g)
        derivation = jacobian_derivation(f, g, varset)
    else:
        images = data["derivation_images"]
        if not isinstance(images, dict) or set(images) != set(varset.names):
            raise ProblemFormatError(f"'derivation_images' deve avere le chiavi {list(varset.names)}")
        derivation = Derivation(
            tuple(_parse_field(text, images[name], varset, f"derivation_images.{name}") for name in varset.names),
            varset,
        )

    name = data.get("name", "")
    if not isinstance(name, str):
        raise ProblemFormatError("'name' deve essere una stringa")
    logger.debug(f"Problema letto: {name or '<senza nome>'}, variabili {varset}")
    return ProblemFile(varset, derivation, kernel, parsed_options, name, data)


def load_problem(path: Union[str, Path]) -> ProblemFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFormatError(f"Impossibile leggere {path}: {exc.strerror}") from exc
    return parse_problem(text)

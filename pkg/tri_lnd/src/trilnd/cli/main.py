# -----------------------------------------------------------------------------
# File: trilnd/cli/main.py
# -----------------------------------------------------------------------------

"""Interfaccia a riga di comando.

Codici di uscita: 0 per ogni verdetto matematico, 2 per errori di lettura,
3 per input non validi o contratti violati, 1 per tutto il resto.
"""

import argparse
import json
import sys
import time
from dataclasses import replace
from typing import Any, Dict, List, Optional, Tuple

from trilnd.config import TrilndSettings, get_logger, get_settings, initialize_trilnd
from trilnd.core.derivation import SemiDecisionBounds, irreducible_decomposition, is_locally_nilpotent
from trilnd.core.plinth import plinth_generator
from trilnd.core.rank import classify_rank
from trilnd.core.triangulate import BasisShapeError, triangulate, verify_form
from trilnd.exceptions import ContractViolationError, InvalidInputError, ParsingError, TrilndError
from trilnd.reader import (
    ProblemFile,
    ReportFile,
    build_report,
    invalid_input_report,
    load_problem,
    render_json,
    render_text,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSING = 2
EXIT_INVALID = 3


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("problem", help="File problema JSON.")
    parser.add_argument(
        "--bound",
        type=int,
        default=None,
        help="Iterazioni massime della semidecisione di nilpotenza (default: settings, 200).",
    )
    parser.add_argument(
        "--degree-cap",
        type=int,
        default=None,
        help="Soglia di grado degli iterati; si interrompe a 4 volte tanto (default: settings, 60).",
    )
    parser.add_argument(
        "--format",
        choices=["text", "json"],
        default=None,
        help="Formato del rapporto su stdout (default: opzioni del problema, poi settings).",
    )
    parser.add_argument("--config", default=None, help="File YAML di configurazione.")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
        help="Livello di log su stderr.",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trilnd",
        description="Triangolabilita' di derivazioni localmente nilpotenti di K[x,y,z].",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", help="Comandi disponibili")
    subparsers.required = True

    analyze_parser = subparsers.add_parser(
        "analyze",
        help="Esegue la procedura completa e stampa il rapporto",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_common_arguments(analyze_parser)
    analyze_parser.add_argument(
        "--verify",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Ripassata di verifica della forma triangolare prima dell'emissione.",
    )

    rank_parser = subparsers.add_parser(
        "rank",
        help="Si ferma alla classificazione del rango (plinth e rango)",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_common_arguments(rank_parser)
    return parser


def _resolve(args: argparse.Namespace, problem: ProblemFile, settings: TrilndSettings) -> Tuple[SemiDecisionBounds, str]:
    """Precedenza: riga di comando, poi opzioni del problema, poi settings."""
    bounds = problem.bounds(settings.bounds())
    if args.bound is not None or args.degree_cap is not None:
        bounds = SemiDecisionBounds(
            args.bound if args.bound is not None else bounds.nilpotency_bound,
            args.degree_cap if args.degree_cap is not None else bounds.degree_cap,
        )
    output_format = args.format or problem.options.format or settings.output_format
    return bounds, output_format


def analyze(problem: ProblemFile, bounds: SemiDecisionBounds, verify: bool = True) -> Tuple[ReportFile, int]:
    """
    Esegue la pipeline su un problema.

    Returns:
        Il rapporto e il codice di uscita (0, oppure 3 per ``invalid_input``
        e per una base di forma inattesa, riportata grezza nel testimone).
    """
    if problem.kernel is None:
        report = invalid_input_report(
            problem.variables,
            problem.derivation.as_dict(),
            "forma jacobiana richiesta: mancano i generatori del nucleo",
        )
        return report, EXIT_INVALID
    started = time.perf_counter()
    try:
        result = triangulate(problem.derivation, problem.kernel, bounds)
    except BasisShapeError as exc:
        logger.error(f"Contratto violato: {exc}")
        return build_report(exc.report), EXIT_INVALID
    verified: Optional[bool] = None
    if verify and result.form is not None:
        verified = verify_form(result.derivation, result.form).ok
    for outcome in result.primes:
        logger.prime(f"Esito: {type(outcome).__name__}", prime=outcome.c_i.to_text())
    logger.stage(
        f"Analisi completata in {time.perf_counter() - started:.2f}s: {result.verdict.value}", stage="triangulate"
    )
    return build_report(result, verified), EXIT_OK


def classify(problem: ProblemFile, bounds: SemiDecisionBounds) -> Dict[str, Any]:
    """Plinth e rango, senza la parte per primi."""
    if problem.kernel is None:
        raise InvalidInputError("forma jacobiana richiesta: mancano i generatori del nucleo")
    X = problem.derivation
    problem.kernel.check(X)
    nilpotency = is_locally_nilpotent(X, bounds.nilpotency_bound, bounds.degree_cap)
    if nilpotency.refuted:
        raise ContractViolationError("La derivazione non e' localmente nilpotente")
    result: Dict[str, Any] = {"variables": list(X.varset.names), "bounds_used": bounds.as_dict()}
    if not nilpotency.is_nilpotent:
        result.update(rank=None, reason=f"limite superato ({nilpotency.tripped})")
        return result
    prefactor, Y = irreducible_decomposition(X)
    certificate = plinth_generator(Y, problem.kernel, bounds.nilpotency_bound)
    verdict = classify_rank(Y, certificate, bounds)
    logger.stage(f"Rango {verdict.rank}", stage="rank")
    result.update(
        prefactor=prefactor.to_text(),
        plinth_generator=certificate.c_xyz.to_text(),
        plinth_generator_FG=certificate.c_FG.to_text(),
        minimal_local_slice=certificate.s.to_text(),
        rank=verdict.rank,
    )
    if verdict.reason:
        result["reason"] = verdict.reason
    if verdict.data is not None:
        result.update(
            u=verdict.data.u_xyz.to_text(),
            p=verdict.data.mate_xyz.to_text(),
            ell=verdict.data.ell.to_text(),
        )
    return result


def _render_mapping(mapping: Dict[str, Any], output_format: str) -> str:
    if output_format == "json":
        return json.dumps(mapping, indent=2, ensure_ascii=False)
    return "\n".join(f"{key}: {value}" for key, value in mapping.items() if value is not None)


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = TrilndSettings.from_file(args.config) if args.config else get_settings()
        if args.log_level:
            settings = replace(settings, log_level=args.log_level)
        initialize_trilnd(settings)

        problem = load_problem(args.problem)
        bounds, output_format = _resolve(args, problem, settings)

        if args.command == "rank":
            sys.stdout.write(_render_mapping(classify(problem, bounds), output_format) + "\n")
            return EXIT_OK

        verify = settings.verify if args.verify is None else args.verify
        report, code = analyze(problem, bounds, verify)
        rendered = render_json(report) if output_format == "json" else render_text(report)
        sys.stdout.write(rendered + "\n")
        return code
    except ParsingError as exc:
        logger.error(f"Errore di lettura: {exc}")
        sys.stderr.write(f"trilnd: errore di lettura: {exc}\n")
        return EXIT_PARSING
    except InvalidInputError as exc:
        logger.error(f"Input non valido: {exc}")
        sys.stderr.write(f"trilnd: input non valido: {exc}\n")
        return EXIT_INVALID
    except TrilndError as exc:
        logger.exception(f"Errore: {exc}")
        sys.stderr.write(f"trilnd: errore: {exc}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

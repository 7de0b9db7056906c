#!/usr/bin/env python3
"""
Suite di chiusura: derivazioni triangolari casuali coniugate da automorfismi tame.
Ogni istanza deve ricevere un verdetto positivo verificato.
Utilizzo: python run_closure.py [--instances N] [--seed S] [--output FILE]
"""

import argparse
import json
import random
import sys
import time
from pathlib import Path
from typing import Any, Dict

# Aggiungi la directory src al path per importare il pacchetto trilnd
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from trilnd.config import TrilndSettings, get_settings, initialize_trilnd  # noqa: E402
from trilnd.core import VarSet  # noqa: E402
from trilnd.core.automorphism import conjugated_kernel, random_tame, random_triangular_kernel  # noqa: E402
from trilnd.core.derivation import SemiDecisionBounds, jacobian_derivation  # noqa: E402
from trilnd.core.triangulate import triangulate, verify_form  # noqa: E402
from trilnd.exceptions import TrilndError  # noqa: E402

XYZ = VarSet(("x", "y", "z"))


def setup_argument_parser() -> argparse.ArgumentParser:
    """Configura il parser degli argomenti della riga di comando"""
    parser = argparse.ArgumentParser(
        description="Suite di chiusura per trilnd",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--instances", type=int, default=None, help="Istanze (default: settings)")
    parser.add_argument("--seed", type=int, default=None, help="Primo seme (default: settings)")
    parser.add_argument("--degree", type=int, default=3, help="Grado massimo della derivazione triangolare")
    parser.add_argument("--length", type=int, default=4, help="Lunghezza massima del coniugante")
    parser.add_argument("--height", type=int, default=5, help="Altezza massima dei coefficienti")
    parser.add_argument("--degree-cap", type=int, default=200, help="Soglia di grado delle semidecisioni")
    parser.add_argument("--config", type=str, default=None, help="File YAML di configurazione")
    parser.add_argument("--output", type=str, default=None, help="File JSON con il riepilogo")
    return parser


def run_instance(seed: int, args: argparse.Namespace, bounds: SemiDecisionBounds) -> Dict[str, Any]:
    """Una istanza: costruzione, analisi e verifica"""
    rng = random.Random(seed)
    kernel = random_triangular_kernel(XYZ, rng, degree=args.degree, height=args.height)
    sigma = random_tame(XYZ, rng, length=args.length, height=args.height).check()
    X = sigma.conjugate(jacobian_derivation(kernel.f, kernel.g))
    started = time.perf_counter()
    report = triangulate(X, conjugated_kernel(sigma, kernel), bounds)
    verified = report.form is not None and verify_form(X, report.form).ok
    return {
        "seed": seed,
        "verdict": report.verdict.value,
        "verified": verified,
        "seconds": round(time.perf_counter() - started, 3),
    }


def main():
    """Funzione principale"""
    args = setup_argument_parser().parse_args()

    try:
        settings = TrilndSettings.from_file(args.config) if args.config else get_settings()
    except TrilndError as e:
        print(f"Errore nel caricamento della configurazione: {e}", file=sys.stderr)
        sys.exit(1)
    _, logger = initialize_trilnd(settings)

    instances = args.instances or settings.closure_instances
    first = settings.closure_seed if args.seed is None else args.seed
    bounds = SemiDecisionBounds(settings.nilpotency_bound, args.degree_cap)
    logger.stage(f"Suite di chiusura: {instances} istanze dal seme {first}", stage="triangulate")

    results = []
    for seed in range(first, first + instances):
        try:
            outcome = run_instance(seed, args, bounds)
        except TrilndError as e:
            outcome = {"seed": seed, "verdict": "error", "verified": False, "error": str(e)}
        if not outcome["verified"]:
            logger.error(f"Seme {seed}: {outcome['verdict']}")
        results.append(outcome)

    failures = [outcome for outcome in results if not outcome["verified"]]
    summary = {
        "instances": instances,
        "first_seed": first,
        "passed": instances - len(failures),
        "failures": failures,
        "results": results,
    }
    if args.output:
        output_file = Path(args.output)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        output_file.write_text(json.dumps(summary, indent=2), encoding="utf-8")
        logger.info(f"Riepilogo salvato in: {output_file}")

    print(f"{summary['passed']}/{instances} istanze positive e verificate")
    sys.exit(0 if not failures else 1)


if __name__ == "__main__":
    main()

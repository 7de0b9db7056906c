"""Riga di comando: ``trilnd analyze`` e ``trilnd rank``."""

from trilnd.cli.main import analyze, build_parser, classify, main, run

__all__ = ["analyze", "build_parser", "classify", "main", "run"]

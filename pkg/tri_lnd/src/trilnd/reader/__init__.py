"""Lettura dei problemi e scrittura/rilettura dei rapporti."""

from trilnd.reader.export import (
    ReportFile,
    build_report,
    invalid_input_report,
    load_report,
    render_json,
    render_text,
)
from trilnd.reader.problem import ProblemFile, ProblemOptions, load_problem, parse_problem

__all__ = [
    "ProblemFile",
    "ProblemOptions",
    "ReportFile",
    "build_report",
    "invalid_input_report",
    "load_problem",
    "load_report",
    "parse_problem",
    "render_json",
    "render_text",
]

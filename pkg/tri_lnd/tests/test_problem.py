import json

import pytest

from trilnd.core.derivation import SemiDecisionBounds
from trilnd.exceptions import PolynomialSyntaxError, ProblemFormatError, UndeclaredVariableError
from trilnd.reader import load_problem, parse_problem

from .conftest import P

MULTILINE = """{
  "variables": ["x", "y", "z"],
  "kernel_generators": ["x", "y + w"]
}"""


def _document(**overrides):
    data = {"variables": ["x", "y", "z"], "kernel_generators": ["x", "y"]}
    data.update(overrides)
    return json.dumps({key: value for key, value in data.items() if value is not None})


def test_load_first_example(problems_dir):
    problem = load_problem(problems_dir / "example1.json")
    assert problem.variables == ("x", "y", "z")
    assert problem.kernel.f == P("x")
    assert problem.kernel.g == P("y + 1/4*(x*z + y^2)^2")
    assert problem.bounds() == SemiDecisionBounds(200, 60)
    assert problem.name


def test_options_and_images(problems_dir):
    translation = load_problem(problems_dir / "partial_z.json")
    assert translation.options.format == "json"
    assert translation.options.as_dict() == {"format": "json"}
    assert translation.derivation.images == (P("0"), P("0"), P("1"))

    images = load_problem(problems_dir / "images_only.json")
    assert images.kernel is None
    assert images.derivation.images == (P("0"), P("x"), P("y"))


def test_undeclared_variable_reports_document_position():
    with pytest.raises(UndeclaredVariableError) as info:
        parse_problem(MULTILINE)
    assert (info.value.line, info.value.column) == (3, 35)
    assert info.value.token == "w"
    assert info.value.details["campo"] == "kernel_generators[1]"


def test_invalid_json():
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_problem('{"variables": ["x", "y", "z"],\n  "kernel_generators": [')
    assert info.value.line == 2


@pytest.mark.parametrize(
    "overrides",
    [
        {"derivation_images": {"x": "0", "y": "0", "z": "1"}},
        {"kernel_generators": None},
        {"variables": ["x", "y"]},
        {"variables": ["x", "x", "z"]},
        {"kernel_generators": ["x"]},
        {"kernel_generators": ["x", 3]},
        {"options": {"nilpotency_bound": 0}},
        {"options": {"degree_cap": True}},
        {"options": {"format": "xml"}},
        {"options": {"colour": "red"}},
        {"extra": 1},
    ],
)
def test_malformed_problems(overrides):
    with pytest.raises(ProblemFormatError):
        parse_problem(_document(**overrides))


def test_missing_file(tmp_path):
    with pytest.raises(ProblemFormatError):
        load_problem(tmp_path / "assente.json")


def test_bounds_fall_back_to_defaults():
    problem = parse_problem(_document(options={"degree_cap": 12}))
    assert problem.bounds(SemiDecisionBounds(50, 60)) == SemiDecisionBounds(50, 12)

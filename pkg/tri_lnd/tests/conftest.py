import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from trilnd.config import set_settings  # noqa: E402
from trilnd.core import KernelPair, Polynomial, VarSet, parse_polynomial  # noqa: E402

PROBLEMS = ROOT / "data" / "problems"

XYZ = VarSet(("x", "y", "z"))

EXAMPLE1_G = "y + 1/4*(x*z + y^2)^2"
EXAMPLE2_F = "2*x + y + z^2 - 2*z*x*y + x^2*y^2"
EXAMPLE2_G = (
    "3*x*y + 2*x^2 - 2*z*x + 2*x^2*y + y^2 - y*z + x*y^2 + z^2*y + z^2*x - z^3"
    " + 3*z^2*x*y - 2*z*x*y^2 - 2*z*x^2*y - 3*z*x^2*y^2 + x^2*y^3 + x^3*y^2 + x^3*y^3"
    " - z^2 + 2*z*x*y - x^2*y^2"
)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="esegue anche i test lenti")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: test lento, eseguito solo con --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="serve --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def P(text: str, varset=XYZ) -> Polynomial:
    return parse_polynomial(text, varset)


@pytest.fixture(autouse=True)
def fresh_settings():
    set_settings(None)
    yield
    set_settings(None)


@pytest.fixture
def xyz():
    return XYZ


@pytest.fixture
def example1_kernel():
    return KernelPair(P("x"), P(EXAMPLE1_G))


@pytest.fixture
def example2_kernel():
    return KernelPair(P(EXAMPLE2_F), P(EXAMPLE2_G))


@pytest.fixture
def translation_kernel():
    return KernelPair(P("x"), P("y"))


@pytest.fixture
def problems_dir():
    return PROBLEMS

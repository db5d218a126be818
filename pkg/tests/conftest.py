import multiprocessing
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from components.functions import PolynomialSpec, first_xi_roots, poly_handle, sin_handle, xi_handle  # noqa: E402
from components.numerics import PrecisionContext  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--run-long", action="store_true", default=False,
                     help="run experiments at heights above 1e4")


def pytest_configure(config):
    try:
        multiprocessing.set_start_method("spawn", force=True)
    except RuntimeError:
        pass


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long"):
        return
    skip_long = pytest.mark.skip(reason="needs --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip_long)


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(digits=50)


@pytest.fixture(scope="session")
def xi_ctx():
    return PrecisionContext(digits=30)


@pytest.fixture(scope="session")
def quadratic(ctx):
    """g(z) = z² − 1."""
    return poly_handle(PolynomialSpec(roots=("1", "-1")), ctx)


@pytest.fixture(scope="session")
def octic(ctx):
    """Degree-8 polynomial whose roots are the first eight zeros of ξ."""
    return poly_handle(PolynomialSpec(roots=first_xi_roots(8)), ctx)


@pytest.fixture(scope="session")
def sine(ctx):
    return sin_handle(ctx)


@pytest.fixture(scope="session")
def xi_h(xi_ctx):
    return xi_handle(xi_ctx)

import random

import pytest

from tangles.builtin import EXTRAS, SUITE, load


@pytest.fixture(scope="session")
def schemas():
    return {name: load(name) for name in SUITE + EXTRAS}


@pytest.fixture()
def rng():
    return random.Random(20240809)


def pytest_addoption(parser):
    parser.addoption(
        "--acceptance-seed",
        action="store",
        default="7",
        help="seed for the acceptance suite's sampling",
    )


@pytest.fixture(scope="session")
def acceptance_seed(request):
    return int(request.config.getoption("--acceptance-seed"))

"""
Shared fixtures: the named symplectic modules and their standard characters
"""

import pytest

from algebra.zmod import AdditiveCharacter
from tools.fixtures import fixture_space


@pytest.fixture(scope="session")
def z3():
    return fixture_space("Z3^2")


@pytest.fixture(scope="session")
def z5():
    return fixture_space("Z5^2")


@pytest.fixture(scope="session")
def z9():
    return fixture_space("Z9^2")


@pytest.fixture(scope="session")
def h33():
    return fixture_space("H(3,3)")


@pytest.fixture(scope="session")
def h39():
    return fixture_space("H(3,9)")


@pytest.fixture(scope="session")
def z15():
    return fixture_space("Z15^2")


@pytest.fixture(scope="session", params=["Z3^2", "Z5^2", "Z9^2", "H(3,3)", "H(3,9)", "Z15^2"])
def any_space(request):
    return fixture_space(request.param)


def character(space, s=1):
    return AdditiveCharacter(space.ring, s)

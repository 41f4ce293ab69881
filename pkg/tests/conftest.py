"""Shared fixtures: canonical theories and their Z2 trivial extensions."""

import pytest

from gxbtc import constructions as cons
from gxbtc.groups import FiniteGroup

Z2 = FiniteGroup.cyclic(2)


@pytest.fixture(scope="session")
def toric():
    return cons.toric_code()


@pytest.fixture(scope="session")
def semion_theory():
    return cons.semion()


@pytest.fixture(scope="session")
def double_semion_theory():
    return cons.double_semion()


@pytest.fixture(scope="session")
def z4_theory():
    return cons.z4_anyons()


@pytest.fixture(scope="session")
def fib():
    return cons.fibonacci()


@pytest.fixture(scope="session")
def toric_z2():
    return cons.trivial_extension(cons.toric_code(), Z2)


@pytest.fixture(scope="session")
def semion_z2():
    return cons.trivial_extension(cons.semion(), Z2)

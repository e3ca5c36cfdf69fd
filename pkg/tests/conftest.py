import pytest

from src.entangle.core import catalog, Tolerances


@pytest.fixture
def tolerances():
    return Tolerances()


@pytest.fixture
def phi_plus():
    return catalog("PhiPlus")


@pytest.fixture
def ghz():
    return catalog("GHZ(3,2)")


@pytest.fixture
def ghz_qutrit():
    return catalog("GHZ(3,3)")


@pytest.fixture
def w3():
    return catalog("W3")


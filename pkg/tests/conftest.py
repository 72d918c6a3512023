"""Shared algebras, built once per test session."""
import pytest

from src.algebra.even_arc import EvenArcAlgebra
from src.algebra.odd_arc import OddArcAlgebra
from src.analysis.associator import Associator, TwistedArcAlgebra, explicit_twist


@pytest.fixture(scope="session")
def odd1():
    return OddArcAlgebra(1)


@pytest.fixture(scope="session")
def odd2():
    return OddArcAlgebra(2)


@pytest.fixture(scope="session")
def odd3():
    algebra = OddArcAlgebra(3)
    algebra.build_cache()
    return algebra


@pytest.fixture(scope="session")
def even2():
    return EvenArcAlgebra(2)


@pytest.fixture(scope="session")
def assoc2():
    return Associator(2)


@pytest.fixture(scope="session")
def twisted2(odd2):
    return TwistedArcAlgebra(odd2, explicit_twist())

"""
Pytest configuration and fixtures.

Provides shared named systems, an API client and a seeded generator of
random singular expressions.
"""
import pytest
from faker import Faker
from fastapi.testclient import TestClient

from scox.core.system import named_system
from scox.services.expressions import DOWN, UP, Expression


@pytest.fixture(scope="session")
def a1a1():
    return named_system("A1×A1")


@pytest.fixture(scope="session")
def a2():
    return named_system("A2")


@pytest.fixture(scope="session")
def b2():
    return named_system("B2")


@pytest.fixture(scope="session")
def a3():
    return named_system("A3")


@pytest.fixture(scope="session")
def b3():
    return named_system("B3")


@pytest.fixture(scope="session")
def i25():
    return named_system("I2(5)")


@pytest.fixture(scope="session")
def h3():
    return named_system("H3")


@pytest.fixture(scope="function")
def client():
    """Test client for the FastAPI app."""
    from scox.main import app

    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture
def random_expressions():
    """
    Factory for random expressions.

    random_expressions(system, count, max_width, seed=0) walks from a random
    start subset, adding or removing one generator per step while staying
    finitary.
    """
    def factory(system, count, max_width, seed=0):
        fake = Faker()
        fake.seed_instance(seed)
        generators = list(system.generators)
        found = []
        for _ in range(count):
            start = frozenset(g for g in generators if fake.boolean(chance_of_getting_true=30))
            if not system.is_finitary(start):
                start = frozenset()
            current = set(start)
            steps = []
            for _ in range(fake.random_int(min=0, max=max_width)):
                g = fake.random_element(generators)
                if g in current:
                    steps.append((DOWN, g))
                    current.remove(g)
                elif system.is_finitary(current | {g}):
                    steps.append((UP, g))
                    current.add(g)
            found.append(Expression(system, start, tuple(steps)))
        return found

    return factory

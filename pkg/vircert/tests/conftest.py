import os
import sys
from unittest.mock import Mock

import pytest
from sqlalchemy.orm import Session

sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))


# Braiding tables and certificates are expensive; share them per session.
@pytest.fixture(scope='session')
def calculator_k1():
    """Braiding calculator for the k = 1 model (p = 7)."""
    from vircert.domain.entities.braiding import BraidingCalculator

    return BraidingCalculator(7)


@pytest.fixture(scope='session')
def calculator_k2():
    """Braiding calculator for the k = 2 model (p = 8)."""
    from vircert.domain.entities.braiding import BraidingCalculator

    return BraidingCalculator(8)


@pytest.fixture(scope='session')
def certificate_k1(calculator_k1):
    from vircert.domain.certifier import certify

    return certify(1, calculator=calculator_k1)


@pytest.fixture(scope='session')
def certificate_k2(calculator_k2):
    from vircert.domain.certifier import certify

    return certify(2, calculator=calculator_k2)


@pytest.fixture
def mock_session():
    """Fixture for a mock database session."""
    session = Mock(spec=Session)
    session.scalar.return_value = None
    return session


@pytest.fixture
def memory_session():
    """Session on a fresh in-memory sqlite cache database."""
    from vircert.infra.databases.database import create_cache_engine

    engine = create_cache_engine(':memory:')
    with Session(engine) as session:
        yield session
    engine.dispose()


@pytest.fixture
def quiet_environment(monkeypatch):
    """Default settings with logging limited to warnings."""
    for name in list(os.environ):
        if name.startswith('VIRCERT_'):
            monkeypatch.delenv(name)
    monkeypatch.setenv('VIRCERT_LOG_LEVEL', 'WARNING')
    monkeypatch.setenv('VIRCERT_CACHE_MODE', 'none')

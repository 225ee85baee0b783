from sqlalchemy import create_engine
from sqlalchemy.engine import Engine

from vircert.infra.repositories.sql_alchemy_models import table_registry


def sqlite_url(path: str) -> str:
    return 'sqlite:///:memory:' if path == ':memory:' else f'sqlite:///{path}'


def create_cache_engine(path: str) -> Engine:
    """Engine for the r-matrix cache file, creating the tables if needed."""
    engine = create_engine(sqlite_url(path))
    table_registry.metadata.create_all(engine)
    return engine

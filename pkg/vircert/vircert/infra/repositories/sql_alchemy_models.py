from sqlalchemy import Boolean, Column, Integer, String, Text
from sqlalchemy.orm import registry

table_registry = registry()

CACHE_FORMAT_VERSION = 1


@table_registry.mapped
class SQLAlchemyRMatrixEntry:
    __tablename__ = 'r_matrix_entries'

    p = Column(Integer, primary_key=True)
    primed = Column(Boolean, primary_key=True)
    key = Column(String, primary_key=True)
    order = Column(Integer, nullable=False)
    terms = Column(Text, nullable=False)


@table_registry.mapped
class SQLAlchemyCacheMeta:
    __tablename__ = 'cache_meta'

    name = Column(String, primary_key=True)
    value = Column(String, nullable=False)

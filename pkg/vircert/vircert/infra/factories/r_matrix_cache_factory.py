import os
from typing import Optional

from sqlalchemy.orm import Session

from vircert.infra.databases.database import create_cache_engine
from vircert.infra.repositories.sql_alchemy_r_matrix_cache_repository import (
    SQLAlchemyRMatrixCacheRepository,
)
from vircert.interfaces.repositories.r_matrix_cache_repository import (
    RMatrixCacheRepository,
)


class RMatrixCacheFactory:
    @staticmethod
    def create(
        cache_mode: Optional[str] = None,
        cache_path: Optional[str] = None,
    ) -> Optional[RMatrixCacheRepository]:
        """Repository for the configured cache mode, or None when caching
        is disabled."""
        if cache_mode is None:
            cache_mode = os.getenv('VIRCERT_CACHE_MODE', 'none')
        if cache_path is None:
            cache_path = os.getenv('VIRCERT_CACHE_PATH')

        cache_mode = cache_mode.lower()

        if cache_mode == 'none':
            return None
        elif cache_mode == 'sqlite':
            if not cache_path:
                raise ValueError('A cache path is required for sqlite mode')
            engine = create_cache_engine(cache_path)
            return SQLAlchemyRMatrixCacheRepository(Session(engine))
        else:
            raise ValueError(f'Invalid cache mode: {cache_mode}')

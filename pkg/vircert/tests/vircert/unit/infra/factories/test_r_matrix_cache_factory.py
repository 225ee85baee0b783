from unittest.mock import patch

import pytest

from vircert.infra.factories.r_matrix_cache_factory import RMatrixCacheFactory
from vircert.infra.repositories.sql_alchemy_r_matrix_cache_repository import (
    SQLAlchemyRMatrixCacheRepository,
)


class TestRMatrixCacheFactory:
    """Tests for the RMatrixCacheFactory."""

    def test_create_none(self):
        assert RMatrixCacheFactory.create(cache_mode='none') is None

    def test_create_sqlite(self, tmp_path):
        """sqlite mode opens a repository on the given file."""
        # Arrange
        path = tmp_path / 'cache.sqlite'

        # Act
        repository = RMatrixCacheFactory.create(
            cache_mode='sqlite', cache_path=str(path)
        )

        # Assert
        assert isinstance(repository, SQLAlchemyRMatrixCacheRepository)
        assert path.exists()
        repository.session.close()

    def test_create_sqlite_without_path(self):
        with pytest.raises(ValueError):
            RMatrixCacheFactory.create(cache_mode='sqlite', cache_path='')

    def test_create_invalid_mode(self):
        """Unknown modes are rejected."""
        with pytest.raises(ValueError) as error:
            RMatrixCacheFactory.create(cache_mode='redis')
        assert 'Invalid cache mode' in str(error.value)

    @patch.dict('os.environ', {'VIRCERT_CACHE_MODE': 'NONE'})
    def test_create_from_environment(self):
        """The mode falls back to VIRCERT_CACHE_MODE."""
        assert RMatrixCacheFactory.create() is None

from fractions import Fraction

from sqlalchemy import select

from vircert.domain.cyclotomic import Cyclotomic, root_of_unity
from vircert.infra.repositories.sql_alchemy_models import (
    SQLAlchemyCacheMeta,
    SQLAlchemyRMatrixEntry,
)
from vircert.infra.repositories.sql_alchemy_r_matrix_cache_repository import (
    FORMAT_VERSION_KEY,
    SQLAlchemyRMatrixCacheRepository,
    encode_labels,
)

LABELS = (5, 2, 2, 3, 4, 4)


class TestSQLAlchemyRMatrixCacheRepository:
    """Tests for the sqlite backed r-matrix cache."""

    def test_encode_labels(self):
        assert encode_labels(LABELS) == '5,2,2,3,4,4'

    def test_stamps_format_version(self, memory_session):
        # Act
        SQLAlchemyRMatrixCacheRepository(memory_session)

        # Assert
        meta = memory_session.scalar(select(SQLAlchemyCacheMeta))
        assert meta.name == FORMAT_VERSION_KEY
        assert meta.value == '1'

    def test_add_then_get(self, memory_session):
        """Stored values come back exactly."""
        # Arrange
        repository = SQLAlchemyRMatrixCacheRepository(memory_session)
        value = root_of_unity(32, 9) * Fraction(-2, 3)

        # Act
        repository.add(8, False, LABELS, value)
        stored = repository.get(8, False, LABELS)

        # Assert
        assert stored == value
        assert stored.order == 32
        assert repository.get(8, True, LABELS) is None

    def test_add_overwrites(self, memory_session):
        # Arrange
        repository = SQLAlchemyRMatrixCacheRepository(memory_session)
        repository.add(8, False, LABELS, Cyclotomic.one(32))

        # Act
        repository.add(8, False, LABELS, root_of_unity(32, 9))

        # Assert
        assert repository.get(8, False, LABELS) == root_of_unity(32, 9)
        entries = memory_session.scalars(select(SQLAlchemyRMatrixEntry))
        assert len(entries.all()) == 1

    def test_discard_and_clear(self, memory_session):
        # Arrange
        repository = SQLAlchemyRMatrixCacheRepository(memory_session)
        repository.add(8, False, LABELS, Cyclotomic.one(32))
        repository.add(8, True, LABELS, Cyclotomic.one(36))

        # Act
        repository.discard(8, False, LABELS)

        # Assert
        assert repository.get(8, False, LABELS) is None
        assert repository.get(8, True, LABELS) == 1
        repository.clear()
        assert repository.get(8, True, LABELS) is None

    def test_stale_format_clears_entries(self, memory_session):
        """Opening a cache written in another format empties it."""
        # Arrange
        repository = SQLAlchemyRMatrixCacheRepository(memory_session)
        repository.add(8, False, LABELS, Cyclotomic.one(32))
        meta = memory_session.scalar(select(SQLAlchemyCacheMeta))
        meta.value = '0'
        memory_session.commit()

        # Act
        reopened = SQLAlchemyRMatrixCacheRepository(memory_session)

        # Assert
        assert reopened.get(8, False, LABELS) is None
        assert memory_session.scalar(select(SQLAlchemyCacheMeta)).value == '1'

    def test_new_cache_with_mock_session(self, mock_session):
        """A missing version row is added and committed."""
        # Act
        SQLAlchemyRMatrixCacheRepository(mock_session)

        # Assert
        added = mock_session.add.call_args[0][0]
        assert isinstance(added, SQLAlchemyCacheMeta)
        assert added.name == FORMAT_VERSION_KEY
        mock_session.commit.assert_called_once()

    def test_get_miss_with_mock_session(self, mock_session):
        # Arrange
        repository = SQLAlchemyRMatrixCacheRepository(mock_session)

        # Act
        result = repository.get(8, False, LABELS)

        # Assert
        assert result is None
        assert mock_session.scalar.call_count == 2

    def test_unreadable_entry_is_a_miss(self, memory_session, caplog):
        """A truncated row is logged, removed and reported as missing."""
        # Arrange
        repository = SQLAlchemyRMatrixCacheRepository(memory_session)
        memory_session.add(
            SQLAlchemyRMatrixEntry(
                p=8,
                primed=False,
                key=encode_labels(LABELS),
                order=32,
                terms='{"order": 32, "terms": [[1, 1',
            )
        )
        memory_session.commit()

        # Act
        result = repository.get(8, False, LABELS)

        # Assert
        assert result is None
        entries = memory_session.scalars(select(SQLAlchemyRMatrixEntry))
        assert entries.all() == []
        assert 'Discarding unreadable cache entry' in caplog.text

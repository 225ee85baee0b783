import logging
from typing import Optional

from pydantic import ValidationError
from sqlalchemy import delete, select
from sqlalchemy.orm import Session

from vircert.domain.cyclotomic import Cyclotomic
from vircert.domain.exceptions import VircertError
from vircert.infra.repositories.sql_alchemy_models import (
    CACHE_FORMAT_VERSION,
    SQLAlchemyCacheMeta,
    SQLAlchemyRMatrixEntry,
)
from vircert.interfaces.repositories.r_matrix_cache_repository import (
    Labels,
    RMatrixCacheRepository,
)
from vircert.interfaces.schemas.cyclotomic_schema import CyclotomicSchema

logger = logging.getLogger(__name__)

FORMAT_VERSION_KEY = 'format_version'


def encode_labels(labels: Labels) -> str:
    return ','.join(str(label) for label in labels)


class SQLAlchemyRMatrixCacheRepository(RMatrixCacheRepository):
    """
    SQLAlchemy implementation of the RMatrixCacheRepository interface.

    Values are stored as the JSON form of CyclotomicSchema. The session is
    owned by the caller.
    """

    def __init__(self, session: Session):
        self.session = session
        self._check_format_version()

    def _check_format_version(self) -> None:
        meta = self.session.scalar(
            select(SQLAlchemyCacheMeta).where(
                SQLAlchemyCacheMeta.name == FORMAT_VERSION_KEY
            )
        )
        expected = str(CACHE_FORMAT_VERSION)
        if meta is not None and meta.value == expected:
            return
        if meta is not None:
            logger.warning(
                f'Cache format {meta.value} differs from {expected}; '
                f'clearing the cache'
            )
            self.clear()
            meta.value = expected
        else:
            self.session.add(
                SQLAlchemyCacheMeta(name=FORMAT_VERSION_KEY, value=expected)
            )
        self.session.commit()

    def _to_domain_value(self, db_entry: SQLAlchemyRMatrixEntry) -> Cyclotomic:
        return CyclotomicSchema.model_validate_json(db_entry.terms).to_value()

    def _find(
        self, p: int, primed: bool, labels: Labels
    ) -> Optional[SQLAlchemyRMatrixEntry]:
        return self.session.scalar(
            select(SQLAlchemyRMatrixEntry).where(
                SQLAlchemyRMatrixEntry.p == p,
                SQLAlchemyRMatrixEntry.primed == primed,
                SQLAlchemyRMatrixEntry.key == encode_labels(labels),
            )
        )

    def get(
        self, p: int, primed: bool, labels: Labels
    ) -> Optional[Cyclotomic]:
        db_entry = self._find(p, primed, labels)
        if db_entry is None:
            logger.debug(f'Cache miss for p={p} primed={primed} {labels}')
            return None
        try:
            return self._to_domain_value(db_entry)
        except (ValidationError, VircertError, ValueError) as error:
            logger.warning(
                f'Discarding unreadable cache entry p={p} primed={primed} '
                f'{labels}: {error}'
            )
            self.session.delete(db_entry)
            self.session.commit()
            return None

    def add(
        self, p: int, primed: bool, labels: Labels, value: Cyclotomic
    ) -> None:
        payload = CyclotomicSchema.from_value(value).model_dump_json()
        db_entry = self._find(p, primed, labels)
        if db_entry is None:
            db_entry = SQLAlchemyRMatrixEntry(
                p=p,
                primed=primed,
                key=encode_labels(labels),
                order=value.order,
                terms=payload,
            )
            self.session.add(db_entry)
        else:
            db_entry.order = value.order
            db_entry.terms = payload
        self.session.commit()

    def discard(self, p: int, primed: bool, labels: Labels) -> None:
        db_entry = self._find(p, primed, labels)
        if db_entry is not None:
            self.session.delete(db_entry)
            self.session.commit()

    def clear(self) -> None:
        self.session.execute(delete(SQLAlchemyRMatrixEntry))
        self.session.commit()

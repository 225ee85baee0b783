import logging
from typing import Optional, Tuple

from vircert.domain.cyclotomic import Cyclotomic
from vircert.domain.entities.braiding import RKey, RMatrix
from vircert.interfaces.repositories.r_matrix_cache_repository import (
    RMatrixCacheRepository,
)

logger = logging.getLogger(__name__)


class EvaluateRMatrixUseCase:
    """
    Evaluates a single r-matrix entry exactly.

    Attributes:
        cache_repository: Optional persistent memo for r-matrix entries.
        verify_every: Every n-th cache hit is recomputed; 0 disables.
    """

    def __init__(
        self,
        cache_repository: Optional[RMatrixCacheRepository] = None,
        verify_every: int = 0,
    ):
        self.cache_repository = cache_repository
        self.verify_every = verify_every

    def execute(
        self, p: int, key_text: str, primed: bool = False
    ) -> Tuple[RKey, Cyclotomic]:
        """
        Args:
            p: Minimal model parameter.
            key_text: Comma separated labels a,m,n,c,b,d.
            primed: Evaluate the primed table at p + 1.

        Returns:
            The parsed key and its value.

        Raises:
            InvalidKey: If the key is malformed or not fusion compatible.
        """
        key = RKey.parse(p, key_text, primed=primed)
        table = RMatrix(
            p,
            primed=primed,
            cache=self.cache_repository,
            verify_every=self.verify_every,
        )
        logger.info(f'Evaluating {key} at p={p}')
        return key, table.value(key)

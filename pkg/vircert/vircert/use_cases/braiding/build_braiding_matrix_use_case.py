import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from vircert.domain.entities.braiding import (
    BraidingCalculator,
    BraidingMatrix,
    braiding_matrix_p,
    braiding_matrix_q,
    verify_inverse_transpose,
)
from vircert.domain.exceptions import InvalidLabel, SingularMatrix
from vircert.interfaces.repositories.r_matrix_cache_repository import (
    RMatrixCacheRepository,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BraidingMatrixResult:
    k: int
    q_side: BraidingMatrix
    p_side: Optional[BraidingMatrix]
    verified: bool


class BuildBraidingMatrixUseCase:
    """
    Builds the braiding matrix for four coset module indices and its
    inverse transpose.

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
        self, k: int, externals: Sequence[int]
    ) -> BraidingMatrixResult:
        if len(externals) != 4:
            raise InvalidLabel(
                f'Four external indices are required, got {list(externals)}',
                category='braiding',
            )
        calculator = BraidingCalculator(
            k + 6,
            cache=self.cache_repository,
            verify_every=self.verify_every,
        )
        q_side = braiding_matrix_q(k, *externals, calculator=calculator)
        try:
            p_side = braiding_matrix_p(q_side)
        except SingularMatrix as e:
            logger.warning(f'Braiding matrix {tuple(externals)}: {e}')
            return BraidingMatrixResult(k, q_side, None, False)
        _, verified = verify_inverse_transpose(p_side, q_side)
        return BraidingMatrixResult(k, q_side, p_side, verified)

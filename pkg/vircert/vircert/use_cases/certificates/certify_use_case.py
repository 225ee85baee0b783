import logging
from typing import Mapping, Optional

from vircert.domain.certifier import certify
from vircert.domain.cyclotomic import Cyclotomic
from vircert.domain.entities.braiding import BraidingCalculator
from vircert.domain.entities.certificate import Certificate
from vircert.interfaces.repositories.r_matrix_cache_repository import (
    RMatrixCacheRepository,
)

logger = logging.getLogger(__name__)

# Smallest precision ceiling accepted for certified signs.
PRECISION_FLOOR_BITS = 64


class CertifyUseCase:
    """
    Produces the uniqueness certificate for one k.

    Attributes:
        max_k: Configured upper bound for k.
        initial_precision: Starting bits for certified signs.
        max_precision: Bits after which a sign counts as undecided.
        preview_digits: Digits of the numeric preview of each element.
        cache_repository: Optional persistent memo for r-matrix entries.
        verify_every: Every n-th cache hit is recomputed; 0 disables.
    """

    def __init__(
        self,
        max_k: int,
        initial_precision: int,
        max_precision: int,
        preview_digits: int = 12,
        cache_repository: Optional[RMatrixCacheRepository] = None,
        verify_every: int = 0,
    ):
        self.max_k = max_k
        self.initial_precision = initial_precision
        self.max_precision = max_precision
        self.preview_digits = preview_digits
        self.cache_repository = cache_repository
        self.verify_every = verify_every

    def execute(
        self,
        k: int,
        max_precision: Optional[int] = None,
        overrides: Optional[Mapping[str, Cyclotomic]] = None,
    ) -> Certificate:
        """
        Runs the lambda propagation, evaluates every required braiding
        element and decides the verdict.

        Args:
            k: Tower index.
            max_precision: Overrides the configured precision ceiling.
            overrides: Replacement values for required elements by name.

        Returns:
            Certificate: UNIQUE or INCONCLUSIVE with reasons.

        Raises:
            BoundExceeded: If k is above the configured bound.
            ValueError: If max_precision is below the precision floor or
                the initial precision.
        """
        if max_precision is None:
            max_precision = self.max_precision
        floor = max(PRECISION_FLOOR_BITS, self.initial_precision)
        if max_precision < floor:
            raise ValueError(
                f'max_precision must be at least {floor} bits, '
                f'got {max_precision}'
            )
        logger.info(f'Certifying k={k}')
        calculator = BraidingCalculator(
            k + 6,
            cache=self.cache_repository,
            verify_every=self.verify_every,
        )
        return certify(
            k,
            max_k=self.max_k,
            calculator=calculator,
            initial_precision=self.initial_precision,
            max_precision=max_precision,
            preview_digits=self.preview_digits,
            overrides=overrides,
        )

import logging

from vircert.domain.entities.tower import Tower, build_tower

logger = logging.getLogger(__name__)


class BuildTowerUseCase:
    """
    Builds the coset tower for k by iterating GKO decompositions.

    Attributes:
        max_k: Configured upper bound for k.
    """

    def __init__(self, max_k: int):
        self.max_k = max_k

    def execute(self, k: int) -> Tower:
        logger.info(f'Building tower for k={k}')
        tower = build_tower(k, self.max_k)
        logger.info(
            f'Tower for k={k}: {tower.total_paths()} paths in '
            f'{len(tower.sectors)} sectors'
        )
        return tower

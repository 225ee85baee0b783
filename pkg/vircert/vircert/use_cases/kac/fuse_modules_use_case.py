from typing import Tuple

from vircert.domain.entities.minimal_model import MinimalModel
from vircert.domain.value_objects import ModuleSum


class FuseModulesUseCase:
    """Computes the fusion product of two minimal model modules."""

    def execute(
        self, p: int, a: Tuple[int, int], b: Tuple[int, int]
    ) -> ModuleSum:
        """
        Args:
            p: Minimal model parameter.
            a: Kac label of the first module.
            b: Kac label of the second module.

        Returns:
            ModuleSum: Canonical labels C with N_{A,B}^C = 1.
        """
        return MinimalModel(p).fuse(a, b)

from fractions import Fraction
from typing import List, Tuple

from vircert.domain.entities.minimal_model import MinimalModel
from vircert.domain.value_objects import KacLabel


class ListWeightsUseCase:
    """Lists the canonical modules of a minimal model with their highest
    weights."""

    def execute(
        self, p: int
    ) -> Tuple[MinimalModel, List[Tuple[KacLabel, Fraction]]]:
        """
        Args:
            p: Minimal model parameter, p >= 2.

        Returns:
            The model and its (label, weight) pairs in canonical order.
        """
        model = MinimalModel(p)
        return model, [
            (label, model.highest_weight(label)) for label in model.modules()
        ]

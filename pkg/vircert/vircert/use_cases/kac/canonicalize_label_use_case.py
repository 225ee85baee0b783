from fractions import Fraction
from typing import Tuple

from vircert.domain.entities.minimal_model import MinimalModel
from vircert.domain.value_objects import KacLabel


class CanonicalizeLabelUseCase:
    def execute(
        self, p: int, label: Tuple[int, int]
    ) -> Tuple[KacLabel, KacLabel, Fraction]:
        model = MinimalModel(p)
        validated = model.validate(label)
        return (
            validated,
            model.canonicalize(validated),
            model.highest_weight(validated),
        )

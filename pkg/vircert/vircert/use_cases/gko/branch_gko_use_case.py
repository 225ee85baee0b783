from dataclasses import dataclass
from fractions import Fraction
from typing import List

from vircert.domain.entities.affine import (
    BranchEntry,
    conserves_ground_weight,
    gko_branch,
    gko_branch_gaps,
)
from vircert.domain.entities.minimal_model import central_charge


@dataclass(frozen=True)
class GkoResult:
    m: int
    epsilon: int
    n: int
    central_charge: Fraction
    entries: List[BranchEntry]
    gaps: List[Fraction]
    conserves_ground_weight: bool


class BranchGkoUseCase:
    """Decomposes L(1, epsilon) x L(m, n) and audits the ground weights."""

    def execute(self, m: int, epsilon: int, n: int) -> GkoResult:
        entries = gko_branch(m, epsilon, n)
        return GkoResult(
            m=m,
            epsilon=epsilon,
            n=n,
            central_charge=central_charge(m + 2),
            entries=entries,
            gaps=gko_branch_gaps(m, epsilon, n),
            conserves_ground_weight=conserves_ground_weight(m, epsilon, n),
        )

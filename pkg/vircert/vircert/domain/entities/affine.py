from fractions import Fraction
from typing import List, Tuple

from vircert.domain.entities.minimal_model import MinimalModel
from vircert.domain.exceptions import InvalidLabel
from vircert.domain.value_objects import AffineLabel, ModuleSum

BranchEntry = Tuple[Fraction, AffineLabel]


def affine_fusion(m: int, j: int, k: int) -> ModuleSum:
    """L(m, j) x L(m, k) = sum of L(m, j + k - 2i),
    max(0, j + k - m) <= i <= min(j, k)."""
    AffineLabel(m, j)
    AffineLabel(m, k)
    return ModuleSum({
        AffineLabel(m, j + k - 2 * i): 1
        for i in range(max(0, j + k - m), min(j, k) + 1)
    })


def gko_branch(m: int, epsilon: int, n: int) -> List[BranchEntry]:
    """Decompose L(1, epsilon) x L(m, n) into Virasoro x affine pieces.

    Each entry pairs the weight h_{(s+1, n+1)} of the c_{m+2} minimal model
    with L(m + 1, s), for 0 <= s <= m + 1 and s = n + epsilon mod 2.

    Args:
        m: Level of the affine factor.
        epsilon: Weight of the level-one factor, 0 or 1.
        n: Weight of the level-m factor.

    Returns:
        List[BranchEntry]: Entries ordered by ascending s.
    """
    if epsilon not in (0, 1):
        raise InvalidLabel(
            f'epsilon must be 0 or 1, got {epsilon}', category='affine-gko'
        )
    AffineLabel(m, n)
    model = MinimalModel(m + 2)
    return [
        (model.highest_weight((s + 1, n + 1)), AffineLabel(m + 1, s))
        for s in range(0, m + 2)
        if (s - n - epsilon) % 2 == 0
    ]


def gko_branch_gaps(m: int, epsilon: int, n: int) -> List[Fraction]:
    """Ground-weight excess of every emitted summand over the ground weight
    of L(1, epsilon) x L(m, n)."""
    source = AffineLabel(1, epsilon).ground_weight() + AffineLabel(
        m, n
    ).ground_weight()
    return [
        weight + label.ground_weight() - source
        for weight, label in gko_branch(m, epsilon, n)
    ]


def conserves_ground_weight(m: int, epsilon: int, n: int) -> bool:
    """Every gap is a non-negative integer, and the gap vanishes once per
    sl2 piece of the ground level (min(epsilon, n) + 1 of them)."""
    gaps = gko_branch_gaps(m, epsilon, n)
    return (
        all(gap.denominator == 1 and gap >= 0 for gap in gaps)
        and sum(1 for gap in gaps if gap == 0) == min(epsilon, n) + 1
    )

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Set, Tuple

from vircert.domain.entities.affine import gko_branch
from vircert.domain.entities.minimal_model import (
    MinimalModel,
    truncated_fusion,
)
from vircert.domain.exceptions import (
    BoundExceeded,
    InvalidLabel,
    InvalidModel,
)
from vircert.domain.value_objects import AffineLabel, ModuleSum

STARTING_SUMMANDS = (
    (AffineLabel(3, 0), 0),
    (AffineLabel(3, 3), 1),
)


@dataclass(frozen=True)
class BranchPath:
    """One Virasoro tensor factorization produced by iterated GKO steps.

    ``weights`` holds (c_p, h) per step and ``affine_indices`` the affine
    weight s reached after each step; ``terminal`` is the last affine label.
    """

    start: AffineLabel
    weights: Tuple[Tuple[Fraction, Fraction], ...] = ()
    affine_indices: Tuple[int, ...] = ()
    terminal: Optional[AffineLabel] = None

    def current(self) -> AffineLabel:
        return self.terminal or self.start

    @property
    def last_weight(self) -> Fraction:
        return self.weights[-1][1]

    @property
    def parent_sector(self) -> int:
        """Affine index one step before the terminal one."""
        if len(self.affine_indices) < 2:
            return self.start.k
        return self.affine_indices[-2]

    def extend(self, epsilon: int) -> List['BranchPath']:
        label = self.current()
        central_charge = MinimalModel(label.level + 2).central_charge
        return [
            BranchPath(
                start=self.start,
                weights=self.weights + ((central_charge, weight),),
                affine_indices=self.affine_indices + (target.k,),
                terminal=target,
            )
            for weight, target in gko_branch(label.level, epsilon, label.k)
        ]


@dataclass
class Tower:
    k: int
    sectors: Dict[int, List[BranchPath]] = field(default_factory=dict)

    @property
    def level(self) -> int:
        return self.k + 5

    def sector(self, index: int) -> List[BranchPath]:
        return self.sectors.get(index, [])

    def terminal_weights(self, index: int) -> Set[Fraction]:
        return {path.last_weight for path in self.sector(index)}

    def total_paths(self) -> int:
        return sum(len(paths) for paths in self.sectors.values())

    def odd_sectors_empty(self) -> bool:
        return all(
            index % 2 == 0 for index, paths in self.sectors.items() if paths
        )

    def grouped(self, index: int) -> List[Tuple[int, Fraction, int]]:
        """(parent sector j, last weight h, path count) rows, the
        [j, h]_{k-1} grouping of a sector."""
        counts: Dict[Tuple[int, Fraction], int] = defaultdict(int)
        for path in self.sector(index):
            counts[(path.parent_sector, path.last_weight)] += 1
        return [(j, h, n) for (j, h), n in sorted(counts.items())]


def _group(k: int, paths: Iterable[BranchPath]) -> Tower:
    sectors: Dict[int, List[BranchPath]] = defaultdict(list)
    for path in paths:
        sectors[path.current().k].append(path)
    return Tower(k=k, sectors=dict(sorted(sectors.items())))


def build_tower(k: int, max_k: Optional[int] = None) -> Tower:
    """Iterate GKO from L(3,0) (epsilons 0,0,...) and L(3,3) (epsilons
    1,0,...) through k + 2 steps, grouping paths by terminal index.

    Args:
        k: Tower index, k >= 0.
        max_k: Configured upper bound for k.

    Returns:
        Tower: Paths grouped by terminal affine index at level k + 5.
    """
    if k < 0:
        raise InvalidModel(
            f'Tower index must be non-negative, got {k}',
            category='coset-tower',
        )
    if max_k is not None and k > max_k:
        raise BoundExceeded(f'k={k} exceeds the configured bound {max_k}')
    paths = [BranchPath(start=start) for start, _ in STARTING_SUMMANDS]
    first_epsilon = dict(STARTING_SUMMANDS)
    for step in range(k + 2):
        paths = [
            child
            for path in paths
            for child in path.extend(
                first_epsilon[path.start] if step == 0 else 0
            )
        ]
    return _group(k, paths)


def extend_tower(tower: Tower) -> Tower:
    """One further GKO step with epsilon = 0: the tower for k + 1."""
    return _group(
        tower.k + 1,
        (
            child
            for paths in tower.sectors.values()
            for path in paths
            for child in path.extend(0)
        ),
    )


def _model_parameter(k: int) -> int:
    if k < 1:
        raise InvalidModel(
            f'Coset modules need k >= 1, got {k}', category='coset-tower'
        )
    return k + 6


def coset_modules(k: int) -> List[int]:
    """Odd i with (1, i) a valid label of the c_{k+6} minimal model."""
    return list(range(1, _model_parameter(k), 2))


def coset_weights(k: int) -> Dict[int, Fraction]:
    model = MinimalModel(_model_parameter(k))
    return {i: model.highest_weight((1, i)) for i in coset_modules(k)}


def _check_module(k: int, index: int) -> None:
    if index not in coset_modules(k):
        raise InvalidLabel(
            f'{index} is not a coset module index for k={k}',
            category='coset-tower',
        )


def fusion_coefficient(k: int, a: int, b: int, c: int) -> int:
    """N_{a,b}^c between coset modules (0 or 1)."""
    return int(truncated_fusion(_model_parameter(k), a, b, c))


def coset_fusion(k: int, i: int, j: int) -> ModuleSum:
    _check_module(k, i)
    _check_module(k, j)
    model = MinimalModel(_model_parameter(k))
    product = model.fuse((1, i), (1, j))
    outside = [label for label in product if label.i_prime != 1]
    if outside:
        raise InvalidLabel(
            f'{i} x {j} leaves the (1, i) family: {outside}',
            category='coset-tower',
        )
    return ModuleSum({label.i: 1 for label in product})


def largest_index(k: int) -> int:
    indices = set(coset_modules(k))
    for i in coset_modules(k):
        for j in coset_modules(k):
            indices.update(coset_fusion(k, i, j))
    return max(indices)


def longest_summand_index(k: int) -> int:
    """Index t maximizing the number of summands of t x t.

    With m = k + 4 = 4K + r, t sits at 2K + 3 when r = 3 and at 2K + 1
    otherwise. For r = 2 both 2K + 1 and 2K + 3 attain the maximum and
    2K + 1 is used, which is the smallest maximizing index.
    """
    sizes = {i: len(coset_fusion(k, i, i)) for i in coset_modules(k)}
    longest = max(sizes.values())
    return min(i for i, size in sizes.items() if size == longest)


def closure_witness(
    k: int, indices: Iterable[int]
) -> Optional[Tuple[int, int, int]]:
    """A triple (a, b, c) with a, b in ``indices``, N_{a,b}^c = 1 and c
    outside, or None when the index set is closed under fusion."""
    members = sorted(set(indices))
    for a in members:
        for b in members:
            for c in coset_fusion(k, a, b):
                if c not in members:
                    return a, b, c
    return None


def is_fusion_closed(k: int, indices: Iterable[int]) -> bool:
    return closure_witness(k, indices) is None


@dataclass(frozen=True)
class GriessCheck:
    k: int
    holds: bool
    witnesses: Tuple[Fraction, Fraction]


def griess_weight_check(k: int) -> GriessCheck:
    """h_{(1,3)} at p = k + 6 plus h_{(3,1)} at p = k + 5 equals 2, i.e.
    (k+8)/(k+6) + (k+4)/(k+6) = 2."""
    upper = MinimalModel(_model_parameter(k)).highest_weight((1, 3))
    lower = MinimalModel(k + 5).highest_weight((3, 1))
    holds = (
        upper == Fraction(k + 8, k + 6)
        and lower == Fraction(k + 4, k + 6)
        and upper + lower == 2
    )
    return GriessCheck(k=k, holds=holds, witnesses=(upper, lower))

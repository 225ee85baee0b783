from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, List, Tuple, Union

from vircert.domain.exceptions import InvalidLabel, InvalidModel
from vircert.domain.value_objects import KacLabel, ModuleSum

LabelLike = Union[KacLabel, Tuple[int, int]]


def truncated_fusion(bound: int, i: int, j: int, k: int) -> bool:
    """Fusion rule for one index of a Kac label truncated at ``bound``.

    True iff 1 <= i, j, k <= bound - 1, i + j + k is odd, the strict
    triangle inequalities hold and i + j + k < 2 * bound.
    """
    if min(i, j, k) < 1 or max(i, j, k) > bound - 1:
        return False
    total = i + j + k
    if total % 2 == 0 or total >= 2 * bound:
        return False
    return k < i + j and i < j + k and j < i + k


def _admissible_representatives(
    p: int, a: KacLabel, b: KacLabel, c: KacLabel
) -> bool:
    primed = (a.i_prime, b.i_prime, c.i_prime)
    unprimed = (a.i, b.i, c.i)
    return truncated_fusion(p + 1, *primed) and truncated_fusion(
        p, *unprimed
    )


class MinimalModel:
    """The unitary minimal model L(c_p, 0), p >= 2.

    Labels (i', i) satisfy 1 <= i' <= p and 1 <= i <= p - 1; the pair
    (p + 1 - i', p - i) names the same module.
    """

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2:
            raise InvalidModel(
                f'Minimal model parameter must be >= 2, got {p}'
            )
        self.p = p

    @property
    def central_charge(self) -> Fraction:
        return 1 - Fraction(6, self.p * (self.p + 1))

    def validate(self, label: LabelLike) -> KacLabel:
        label = label if isinstance(label, KacLabel) else KacLabel(*label)
        if label.i_prime > self.p or label.i > self.p - 1:
            raise InvalidLabel(
                f'Label {label} out of range for p={self.p}: '
                f'need 1 <= i\' <= {self.p} and 1 <= i <= {self.p - 1}'
            )
        return label

    def partner(self, label: LabelLike) -> KacLabel:
        label = self.validate(label)
        return KacLabel(self.p + 1 - label.i_prime, self.p - label.i)

    def highest_weight(self, label: LabelLike) -> Fraction:
        label = self.validate(label)
        p = self.p
        numerator = (p * label.i_prime - (p + 1) * label.i) ** 2 - 1
        return Fraction(numerator, 4 * p * (p + 1))

    def canonicalize(self, label: LabelLike) -> KacLabel:
        """Representative with the smaller i' (ties: smaller i)."""
        label = self.validate(label)
        return min(label, self.partner(label))

    def modules(self) -> List[KacLabel]:
        return list(_canonical_modules(self.p))

    def is_admissible(
        self, a: LabelLike, b: LabelLike, c: LabelLike
    ) -> bool:
        a, b, c = self.validate(a), self.validate(b), self.validate(c)
        choices = [(x, self.partner(x)) for x in (a, b, c)]
        return any(
            _admissible_representatives(self.p, *representatives)
            for representatives in product(*choices)
        )

    def fuse(self, a: LabelLike, b: LabelLike) -> ModuleSum:
        a, b = self.validate(a), self.validate(b)
        return ModuleSum({
            c: 1 for c in self.modules() if self.is_admissible(a, b, c)
        })

    def fuse_sums(self, left: ModuleSum, right: ModuleSum) -> ModuleSum:
        """Bilinear extension of fuse to formal sums."""
        result = ModuleSum()
        for a, m in left.items():
            for b, n in right.items():
                product_sum = self.fuse(a, b)
                result = result + ModuleSum({
                    c: m * n * k for c, k in product_sum.items()
                })
        return result

    def __eq__(self, other):
        return isinstance(other, MinimalModel) and other.p == self.p

    def __hash__(self):
        return hash(('MinimalModel', self.p))

    def __repr__(self):
        return f'MinimalModel(p={self.p}, c={self.central_charge})'


@lru_cache(maxsize=None)
def _canonical_modules(p: int) -> Tuple[KacLabel, ...]:
    model = MinimalModel(p)
    labels = {
        model.canonicalize((i_prime, i))
        for i_prime in range(1, p + 1)
        for i in range(1, p)
    }
    return tuple(sorted(labels))


def central_charge(p: int) -> Fraction:
    return MinimalModel(p).central_charge


def highest_weight(p: int, i_prime: int, i: int) -> Fraction:
    return MinimalModel(p).highest_weight((i_prime, i))


def canonicalize(p: int, i_prime: int, i: int) -> KacLabel:
    return MinimalModel(p).canonicalize((i_prime, i))


def enumerate_modules(p: int) -> List[KacLabel]:
    return MinimalModel(p).modules()


def is_admissible(
    p: int, a: LabelLike, b: LabelLike, c: LabelLike
) -> bool:
    return MinimalModel(p).is_admissible(a, b, c)


def virasoro_fusion(p: int, a: LabelLike, b: LabelLike) -> ModuleSum:
    return MinimalModel(p).fuse(a, b)


def weights(p: int, labels: Iterable[KacLabel] = None) -> List[Fraction]:
    model = MinimalModel(p)
    labels = labels or model.modules()
    return [model.highest_weight(label) for label in labels]

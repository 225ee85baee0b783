from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Generic, Hashable, Iterator, Mapping, Tuple, TypeVar

from vircert.domain.exceptions import InvalidLabel

Label = TypeVar('Label', bound=Hashable)


@dataclass(frozen=True, order=True)
class KacLabel:
    """Kac label (i', i); the model parameter p is carried by context."""

    i_prime: int
    i: int

    def __post_init__(self):
        if self.i_prime < 1 or self.i < 1:
            raise InvalidLabel(
                f'Kac label entries must be positive, got {self.as_tuple()}'
            )

    def as_tuple(self) -> Tuple[int, int]:
        return self.i_prime, self.i

    def __str__(self):
        return f'({self.i_prime},{self.i})'


@dataclass(frozen=True, order=True)
class AffineLabel:
    """Level-m affine sl2 module L(m, k) with 0 <= k <= m."""

    level: int
    k: int

    def __post_init__(self):
        if self.level < 1:
            raise InvalidLabel(
                f'Affine level must be positive, got {self.level}',
                category='affine-gko',
            )
        if not 0 <= self.k <= self.level:
            raise InvalidLabel(
                f'Affine weight {self.k} outside [0, {self.level}]',
                category='affine-gko',
            )

    def ground_weight(self) -> Fraction:
        return Fraction(self.k * (self.k + 2), 4 * (self.level + 2))

    def __str__(self):
        return f'L({self.level},{self.k})'


class ModuleSum(Generic[Label]):
    """Formal sum of module labels with positive integer multiplicities.

    Zero multiplicities are never stored; iteration follows the natural
    ordering of the labels.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms: Mapping[Label, int] = None):
        cleaned: Dict[Label, int] = {}
        for label, multiplicity in (terms or {}).items():
            if multiplicity < 0:
                raise ValueError(
                    f'Multiplicity of {label} must be non-negative'
                )
            if multiplicity:
                cleaned[label] = multiplicity
        self._terms = cleaned

    @classmethod
    def of(cls, *labels: Label) -> 'ModuleSum[Label]':
        terms: Dict[Label, int] = {}
        for label in labels:
            terms[label] = terms.get(label, 0) + 1
        return cls(terms)

    def multiplicity(self, label: Label) -> int:
        return self._terms.get(label, 0)

    def labels(self) -> list:
        return sorted(self._terms)

    def items(self) -> list:
        return [(label, self._terms[label]) for label in self.labels()]

    def total(self) -> int:
        return sum(self._terms.values())

    def __add__(self, other: 'ModuleSum[Label]') -> 'ModuleSum[Label]':
        terms = dict(self._terms)
        for label, multiplicity in other._terms.items():
            terms[label] = terms.get(label, 0) + multiplicity
        return ModuleSum(terms)

    def __contains__(self, label) -> bool:
        return label in self._terms

    def __iter__(self) -> Iterator[Label]:
        return iter(self.labels())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, ModuleSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        inner = ' + '.join(
            str(label) if multiplicity == 1 else f'{multiplicity}*{label}'
            for label, multiplicity in self.items()
        )
        return f'ModuleSum({inner or "0"})'

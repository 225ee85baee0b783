from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from vircert.domain.cyclotomic import Cyclotomic

Triple = Tuple[int, int, int]
Quadruple = Tuple[int, int, int, int]
Product = Tuple[Triple, Triple]

LAMBDA_SQUARE = 'lambda-square'
REFERENCE = 'reference'


def triple_key(a: int, b: int, c: int) -> Triple:
    """Status key of lambda_{a,b}^c; all orderings share one status."""
    return tuple(sorted((a, b, c)))


class LambdaStatus(str, Enum):
    NONZERO = 'nonzero'
    ZERO = 'zero'
    UNKNOWN = 'unknown'


class Verdict(str, Enum):
    UNIQUE = 'UNIQUE'
    INCONCLUSIVE = 'INCONCLUSIVE'


@dataclass(frozen=True)
class LambdaTriple:
    indices: Triple
    status: LambdaStatus = LambdaStatus.UNKNOWN
    provenance: Optional[int] = None


@dataclass(frozen=True)
class Relation:
    """Both orders of composing intertwiners for one ordered quadruple.

    ``left`` holds (lambda_{c,mu}^a, lambda_{b,d}^mu) per intermediate mu,
    ``right`` holds (lambda_{b,beta}^a, lambda_{c,d}^beta) per beta.
    """

    quadruple: Quadruple
    left: Tuple[Product, ...]
    right: Tuple[Product, ...]

    def triples(self) -> set:
        return {key for side in (self.left, self.right)
                for product in side for key in product}

    def mentions(self, key: Triple) -> bool:
        return key in self.triples()


@dataclass(frozen=True)
class DerivationStep:
    """One lemma application.

    ``method`` is one of vacuum, rank, closure or case-split.
    """

    index: int
    lemma: str
    target: Triple
    method: str
    relations: Tuple[Quadruple, ...] = ()
    closure_set: Tuple[int, ...] = ()
    side_conditions: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Requirement:
    """A braiding element that has to be nonzero.

    The element is entry (row, col) of the braiding matrix with external
    indices ``externals`` = (a4, a3, a2, a1). ``kind`` tells the
    lambda-square elements apart from the named reference elements.
    """

    name: str
    triple: Triple
    externals: Quadruple
    row: int
    col: int
    kind: str = LAMBDA_SQUARE


@dataclass
class ElementRecord:
    requirement: Requirement
    value: Optional[Cyclotomic] = None
    is_zero: Optional[bool] = None
    sign_re: Optional[int] = None
    sign_im: Optional[int] = None
    lambda_square_forced: bool = False
    preview: Optional[Tuple[str, str]] = None


@dataclass(frozen=True)
class MatrixCheck:
    externals: Quadruple
    size: int
    inverted: bool
    identity: bool
    detail: str = ''


@dataclass
class Certificate:
    k: int
    p: int
    modules: List[int]
    t: Optional[int] = None
    m: Optional[int] = None
    branch: Optional[str] = None
    derivation: List[DerivationStep] = field(default_factory=list)
    lambdas: List[LambdaTriple] = field(default_factory=list)
    elements: List[ElementRecord] = field(default_factory=list)
    matrices: List[MatrixCheck] = field(default_factory=list)
    verdict: Verdict = Verdict.INCONCLUSIVE
    reasons: List[str] = field(default_factory=list)

    @property
    def nonzero_elements(self) -> int:
        return sum(1 for element in self.elements if element.is_zero is False)

    def elements_of(self, kind: str) -> List[ElementRecord]:
        return [
            element for element in self.elements
            if element.requirement.kind == kind
        ]

    def decide(self) -> Verdict:
        """UNIQUE iff every lambda is nonzero, every required element is
        nonzero and every braiding matrix inverted to an exact identity."""
        reasons = list(self.reasons)
        if not self.lambdas or any(
            triple.status != LambdaStatus.NONZERO for triple in self.lambdas
        ):
            reasons.append('propagation did not conclude every lambda')
        for element in self.elements:
            if element.is_zero is not False:
                reasons.append(
                    f'{element.requirement.name} is not certified nonzero'
                )
        for check in self.matrices:
            if not (check.inverted and check.identity):
                reasons.append(
                    f'matrix {check.externals} failed inverse-transpose '
                    f'verification'
                )
        if not self.elements:
            reasons.append('no braiding elements were evaluated')
        self.reasons = list(dict.fromkeys(reasons))
        self.verdict = (
            Verdict.INCONCLUSIVE if self.reasons else Verdict.UNIQUE
        )
        return self.verdict

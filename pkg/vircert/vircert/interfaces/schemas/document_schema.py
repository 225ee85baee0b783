from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from vircert.interfaces.schemas.cyclotomic_schema import NumericValue

# Exact rationals travel as "num/den" strings.
RationalText = str


def schema_name(kind: str) -> str:
    return f'vircert/{kind}/v1'


class Document(BaseModel):
    schema_: str = Field(alias='schema', serialization_alias='schema')

    model_config = {'populate_by_name': True}


class WeightEntry(BaseModel):
    label: Tuple[int, int]
    weight: RationalText


class WeightsDocument(Document):
    p: int
    central_charge: RationalText
    weights: List[WeightEntry]


class CanonicalDocument(Document):
    p: int
    label: Tuple[int, int]
    canonical: Tuple[int, int]
    weight: RationalText


# ModuleSum of Kac labels: sorted [i_prime, i, multiplicity] rows.
ModuleSumRows = List[Tuple[int, int, int]]

# One GKO summand: [h_num, h_den, m + 1, s].
GkoRow = Tuple[int, int, int, int]


class FusionDocument(Document):
    p: int
    a: Tuple[int, int]
    b: Tuple[int, int]
    product: ModuleSumRows


class GkoDocument(Document):
    m: int
    epsilon: int
    n: int
    central_charge: RationalText
    branch: List[GkoRow]
    gaps: List[RationalText]
    conserves_ground_weight: bool


class PathSchema(BaseModel):
    """A branch path: (c, h) per GKO step, the affine weight reached
    after each step and the terminal affine label [level, s]."""

    weights: List[Tuple[RationalText, RationalText]]
    affine_indices: List[int]
    terminal: Tuple[int, int]


class TowerDocument(Document):
    k: int
    level: int
    total_paths: int
    sectors: Dict[int, List[PathSchema]]


class GriessDocument(Document):
    k: int
    holds: bool
    witnesses: Tuple[RationalText, RationalText]


class RValueDocument(Document):
    p: int
    primed: bool
    key: Tuple[int, int, int, int, int, int]
    value: NumericValue


class MatrixDocument(Document):
    k: int
    p: int
    externals: Tuple[int, int, int, int]
    rows: List[int]
    cols: List[int]
    entries: List[List[NumericValue]]
    inverse_transpose: Optional[List[List[NumericValue]]] = None
    inverse_transpose_verified: bool


class StepSchema(BaseModel):
    index: int
    lemma: str
    target: Tuple[int, int, int]
    method: str
    relations: List[Tuple[int, int, int, int]]
    closure_set: List[int]
    side_conditions: List[str]


class ElementSchema(BaseModel):
    name: str
    kind: str = 'lambda-square'
    triple: Tuple[int, int, int]
    externals: Tuple[int, int, int, int]
    entry: Tuple[int, int]
    value: Optional[NumericValue] = None
    is_zero: Optional[bool] = None
    sign_re: Optional[int] = None
    sign_im: Optional[int] = None
    lambda_square_forced: bool


class MatrixCheckSchema(BaseModel):
    externals: Tuple[int, int, int, int]
    size: int
    inverted: bool
    identity: bool


class CertificateDocument(Document):
    k: int
    p: int
    modules: List[int]
    t: Optional[int] = None
    m: Optional[int] = None
    branch: Optional[str] = None
    lambdas: int
    derivation: List[StepSchema]
    elements: List[ElementSchema]
    lambda_square_elements: int = 0
    reference_elements: int = 0
    matrices: List[MatrixCheckSchema]
    verdict: str
    reasons: List[str]


class ErrorDocument(Document):
    error: str
    category: str
    detail: str

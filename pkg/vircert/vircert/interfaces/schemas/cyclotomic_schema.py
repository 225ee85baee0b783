from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from vircert.domain.cyclotomic import Cyclotomic


class CyclotomicSchema(BaseModel):
    """Exact element of Q(zeta_order) as [exponent, numerator, denominator]
    terms in ascending exponent order."""

    order: int = Field(ge=1)
    terms: List[Tuple[int, int, int]]

    @classmethod
    def from_value(cls, value: Cyclotomic) -> 'CyclotomicSchema':
        return cls(
            order=value.order,
            terms=[
                (exponent, c.numerator, c.denominator)
                for exponent, c in sorted(value.terms().items())
            ],
        )

    def to_value(self) -> Cyclotomic:
        return Cyclotomic.from_terms(
            self.order,
            {
                exponent: Fraction(num, den)
                for exponent, num, den in self.terms
            },
        )


class PreviewSchema(BaseModel):
    re: str
    im: str


class NumericValue(BaseModel):
    exact: CyclotomicSchema
    preview: Optional[PreviewSchema] = None

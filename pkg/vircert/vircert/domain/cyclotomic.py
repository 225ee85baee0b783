from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Mapping, Optional, Tuple, Union

from sympy.polys.densearith import (
    dup_add,
    dup_mul,
    dup_mul_ground,
    dup_neg,
    dup_rem,
    dup_sub,
)
from sympy.polys.densebasic import dup_convert, dup_inflate, dup_strip
from sympy.polys.domains import QQ, ZZ
from sympy.polys.euclidtools import dup_invert
from sympy.polys.factortools import dup_zz_cyclotomic_poly
from sympy.polys.polyerrors import NotInvertible

from vircert.domain.exceptions import DivisionByZero, InvalidModel

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> Tuple:
    """Dense coefficients of the order-th cyclotomic polynomial over QQ,
    leading coefficient first."""
    return tuple(dup_convert(dup_zz_cyclotomic_poly(order, ZZ), ZZ, QQ))


def _to_qq(value: Rational):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _to_fraction(coefficient) -> Fraction:
    return Fraction(int(coefficient.numerator), int(coefficient.denominator))


def _monomial(exponent: int) -> List:
    return [QQ.one] + [QQ.zero] * exponent


def _reduce(poly: List, order: int) -> Tuple:
    return tuple(
        dup_rem(dup_strip(list(poly)), list(cyclotomic_polynomial(order)), QQ)
    )


class Cyclotomic:
    """An element of Q(zeta_N), zeta_N = exp(2 pi i / N).

    Values are stored as the remainder of their representing polynomial
    modulo Phi_N, so two elements of the same order are equal exactly when
    their coefficient tuples are equal. Operands of different orders are
    lifted to the least common multiple before any arithmetic.
    Instances are immutable.
    """

    __slots__ = ('_order', '_poly')
    __hash__ = None

    def __init__(self, order: int, poly: Optional[List] = None):
        if order < 1:
            raise InvalidModel(
                f'Cyclotomic order must be positive, got {order}',
                category='exact-arithmetic',
            )
        self._order = order
        self._poly = _reduce(poly or [], order)

    @classmethod
    def from_terms(
        cls, order: int, terms: Mapping[int, Rational]
    ) -> 'Cyclotomic':
        if not terms:
            return cls(order)
        exponents = {e % order: Fraction(0) for e in terms}
        for exponent, coefficient in terms.items():
            exponents[exponent % order] += Fraction(coefficient)
        degree = max(exponents)
        poly = [QQ.zero] * (degree + 1)
        for exponent, coefficient in exponents.items():
            poly[degree - exponent] = _to_qq(coefficient)
        return cls(order, poly)

    @classmethod
    def rational(cls, value: Rational, order: int = 1) -> 'Cyclotomic':
        return cls(order, [_to_qq(value)])

    @classmethod
    def zero(cls, order: int = 1) -> 'Cyclotomic':
        return cls(order)

    @classmethod
    def one(cls, order: int = 1) -> 'Cyclotomic':
        return cls(order, [QQ.one])

    @property
    def order(self) -> int:
        return self._order

    def terms(self) -> Dict[int, Fraction]:
        """Canonical non-zero coefficients keyed by exponent."""
        degree = len(self._poly) - 1
        return {
            degree - index: _to_fraction(coefficient)
            for index, coefficient in enumerate(self._poly)
            if coefficient
        }

    def is_zero(self) -> bool:
        return not self._poly

    def rational_value(self) -> Optional[Fraction]:
        """The value as a Fraction when it is rational, otherwise None."""
        if not self._poly:
            return Fraction(0)
        if len(self._poly) == 1:
            return _to_fraction(self._poly[0])
        return None

    def lift(self, order: int) -> 'Cyclotomic':
        """Re-express the value inside Q(zeta_order); order must be a
        multiple of the current order."""
        if order == self._order:
            return self
        if order % self._order:
            raise InvalidModel(
                f'Cannot lift order {self._order} to {order}',
                category='exact-arithmetic',
            )
        factor = order // self._order
        return Cyclotomic(order, dup_inflate(list(self._poly), factor, QQ))

    def conj(self) -> 'Cyclotomic':
        return Cyclotomic.from_terms(
            self._order,
            {-exponent: c for exponent, c in self.terms().items()},
        )

    def real_part(self) -> 'Cyclotomic':
        return (self + self.conj()) * Fraction(1, 2)

    def imag_part(self) -> 'Cyclotomic':
        """Im(a) as a real element of Q(zeta_lcm(N, 4))."""
        minus_half_i = root_of_unity(4, 3) * Fraction(1, 2)
        return (self - self.conj()) * minus_half_i

    def invert(self) -> 'Cyclotomic':
        if self.is_zero():
            raise DivisionByZero('Cannot invert the zero cyclotomic')
        if len(self._poly) == 1:
            return Cyclotomic(self._order, [QQ.one / self._poly[0]])
        try:
            inverse = dup_invert(
                list(self._poly), list(cyclotomic_polynomial(self._order)), QQ
            )
        except NotInvertible as e:
            raise DivisionByZero(f'Element is not invertible: {e}')
        return Cyclotomic(self._order, inverse)

    def _coerce(self, other) -> Optional['Cyclotomic']:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(other, self._order)
        return None

    def _aligned(self, other: 'Cyclotomic') -> Tuple[int, List, List]:
        order = self._order * other._order // gcd(self._order, other._order)
        return (
            order,
            list(self.lift(order)._poly),
            list(other.lift(order)._poly),
        )

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order, f, g = self._aligned(other)
        return Cyclotomic(order, dup_add(f, g, QQ))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order, f, g = self._aligned(other)
        return Cyclotomic(order, dup_sub(f, g, QQ))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Cyclotomic(self._order, dup_neg(list(self._poly), QQ))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(
                self._order,
                dup_mul_ground(list(self._poly), _to_qq(other), QQ),
            )
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        order, f, g = self._aligned(other)
        return Cyclotomic(order, dup_mul(f, g, QQ))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.invert()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.invert() ** -exponent
        result = Cyclotomic.one(self._order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        _, f, g = self._aligned(other)
        return f == g

    def __repr__(self):
        terms = ', '.join(
            f'{exponent}: {coefficient}'
            for exponent, coefficient in sorted(self.terms().items())
        )
        return f'Cyclotomic({self._order}, {{{terms}}})'


def root_of_unity(order: int, exponent: int) -> Cyclotomic:
    """zeta_order ** exponent in canonical form."""
    if order < 1:
        raise InvalidModel(
            f'Root of unity order must be positive, got {order}',
            category='exact-arithmetic',
        )
    return Cyclotomic(order, _monomial(exponent % order))


def i_power(exponent: int) -> Cyclotomic:
    return root_of_unity(4, exponent)

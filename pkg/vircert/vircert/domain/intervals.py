import logging
import threading
from dataclasses import dataclass
from typing import Any, Tuple

from mpmath import iv, mp

from vircert.domain.cyclotomic import Cyclotomic
from vircert.domain.exceptions import PrecisionExhausted

logger = logging.getLogger(__name__)

DEFAULT_INITIAL_PRECISION = 64
DEFAULT_MAX_PRECISION = 4096
MIN_PRECISION = 16

# mpmath keeps its working precision on the shared context objects.
_PRECISION_LOCK = threading.RLock()


@dataclass(frozen=True)
class ComplexInterval:
    """Axis-aligned rectangle in C; real and imag are mpmath intervals."""

    real: Any
    imag: Any
    precision: int

    def contains_zero(self) -> bool:
        return 0 in self.real and 0 in self.imag

    def overlaps(self, other: 'ComplexInterval') -> bool:
        return (
            self.real.a <= other.real.b
            and other.real.a <= self.real.b
            and self.imag.a <= other.imag.b
            and other.imag.a <= self.imag.b
        )


def embed(value: Cyclotomic, precision: int) -> ComplexInterval:
    """Enclose the complex value of ``value`` under zeta_N -> exp(2 pi i/N).

    Args:
        value: The cyclotomic number to evaluate.
        precision: Working precision in bits, at least 16.

    Returns:
        ComplexInterval: A rectangle guaranteed to contain the value.
    """
    if precision < MIN_PRECISION:
        raise ValueError(
            f'precision must be at least {MIN_PRECISION} bits, '
            f'got {precision}'
        )
    with _PRECISION_LOCK:
        saved = iv.prec
        iv.prec = precision
        try:
            real = iv.mpf(0)
            imag = iv.mpf(0)
            for exponent, coefficient in value.terms().items():
                scale = iv.mpf(coefficient.numerator) / coefficient.denominator
                angle = 2 * iv.pi * exponent / value.order
                real += scale * iv.cos(angle)
                imag += scale * iv.sin(angle)
        finally:
            iv.prec = saved
    return ComplexInterval(real=real, imag=imag, precision=precision)


def _certified_sign(
    real_value: Cyclotomic, initial_precision: int, max_precision: int
) -> int:
    if real_value.is_zero():
        return 0
    precision = max(initial_precision, MIN_PRECISION)
    while precision <= max_precision:
        component = embed(real_value, precision).real
        if component.a > 0:
            return 1
        if component.b < 0:
            return -1
        logger.debug(
            f'Sign undecided at {precision} bits, doubling precision'
        )
        precision *= 2
    raise PrecisionExhausted(
        f'Sign of a non-zero value undecided within {max_precision} bits'
    )


def sign_real(
    value: Cyclotomic,
    initial_precision: int = DEFAULT_INITIAL_PRECISION,
    max_precision: int = DEFAULT_MAX_PRECISION,
) -> int:
    """Certified sign of Re(value): -1, 0 or +1.

    Zero is decided symbolically; a non-zero sign is decided by refining
    the embedding until the interval excludes zero.
    """
    return _certified_sign(
        value.real_part(), initial_precision, max_precision
    )


def sign_imag(
    value: Cyclotomic,
    initial_precision: int = DEFAULT_INITIAL_PRECISION,
    max_precision: int = DEFAULT_MAX_PRECISION,
) -> int:
    """Certified sign of Im(value): -1, 0 or +1."""
    return _certified_sign(
        value.imag_part(), initial_precision, max_precision
    )


def preview(value: Cyclotomic, digits: int = 12) -> Tuple[str, str]:
    """Floating point rendering of (Re, Im); display only."""
    with _PRECISION_LOCK, mp.workdps(digits + 10):
        total = mp.mpc(0)
        for exponent, coefficient in value.terms().items():
            scale = mp.mpf(coefficient.numerator) / coefficient.denominator
            total += scale * mp.exp(2j * mp.pi * exponent / value.order)
        return mp.nstr(total.real, digits), mp.nstr(total.imag, digits)

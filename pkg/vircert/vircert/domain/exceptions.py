from typing import Optional, Tuple


class VircertError(Exception):
    """Base class for every error raised by the engine.

    Each error carries the category of the module it originated from so
    that the command line surface can report it without guessing.
    """

    category = 'engine'

    def __init__(self, message: str, category: Optional[str] = None):
        super().__init__(message)
        if category is not None:
            self.category = category


class InvalidModel(VircertError, ValueError):
    category = 'kac-data'


class InvalidLabel(VircertError, ValueError):
    category = 'kac-data'


class BoundExceeded(VircertError, ValueError):
    category = 'coset-tower'


class DivisionByZero(VircertError, ZeroDivisionError):
    category = 'exact-arithmetic'


class PrecisionExhausted(VircertError):
    category = 'exact-arithmetic'


class ZeroDenominator(VircertError, ZeroDivisionError):
    category = 'braiding'


class InvalidKey(VircertError, ValueError):
    category = 'braiding'


class SingularMatrix(VircertError):
    category = 'braiding'


class InversionFailure(VircertError):
    category = 'uniqueness-certifier'


class SideConditionFailure(VircertError):
    """A lemma could not be applied because one of its side conditions
    does not hold for the current k."""

    category = 'uniqueness-certifier'

    def __init__(
        self,
        step: str,
        detail: str,
        multiplicity: Optional[Tuple[int, int, int]] = None,
    ):
        super().__init__(f'{step}: {detail}')
        self.step = step
        self.detail = detail
        self.multiplicity = multiplicity


class ParityBranchUnavailable(VircertError):
    category = 'uniqueness-certifier'

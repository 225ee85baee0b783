import logging
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from vircert.domain.cyclotomic import Cyclotomic, i_power, root_of_unity
from vircert.domain.entities.minimal_model import truncated_fusion
from vircert.domain.entities.tower import coset_modules
from vircert.domain.exceptions import (
    InvalidKey,
    InvalidLabel,
    SingularMatrix,
    ZeroDenominator,
)

logger = logging.getLogger(__name__)

SMALLEST = 'smallest'
LARGEST = 'largest'

Labels = Tuple[int, int, int, int, int, int]
TRIVIAL_PRIMED: Labels = (1, 1, 1, 1, 1, 1)


def _compatible(bound: int, a, m, n, c, b, d) -> bool:
    return (
        truncated_fusion(bound, m, a, b)
        and truncated_fusion(bound, n, b, c)
        and truncated_fusion(bound, n, a, d)
        and truncated_fusion(bound, m, d, c)
    )


@dataclass(frozen=True)
class RKey:
    """Index r(a, m, n, c)_{b, d}; primed keys live at p + 1."""

    p: int
    a: int
    m: int
    n: int
    c: int
    b: int
    d: int
    primed: bool = False

    def __post_init__(self):
        if self.p < 2:
            raise InvalidKey(f'Model parameter must be >= 2, got {self.p}')
        if not _compatible(self.bound, *self.labels()):
            raise InvalidKey(
                f'r{self.labels()} is not fusion compatible at '
                f'bound {self.bound}'
            )

    @property
    def bound(self) -> int:
        return self.p + 1 if self.primed else self.p

    def labels(self) -> Labels:
        return self.a, self.m, self.n, self.c, self.b, self.d

    @classmethod
    def parse(cls, p: int, text: str, primed: bool = False) -> 'RKey':
        try:
            values = tuple(int(part) for part in text.split(','))
        except ValueError:
            raise InvalidKey(f'Key must be six integers, got {text!r}')
        if len(values) != 6:
            raise InvalidKey(f'Key must be six integers, got {text!r}')
        return cls(p, *values, primed=primed)

    def __str__(self):
        a, m, n, c, b, d = self.labels()
        mark = "'" if self.primed else ''
        return f'r{mark}({a},{m},{n},{c})_{{{b},{d}}}'


class RMatrix:
    """Memoized FFK r-matrices of one minimal model.

    Unprimed entries use x^{1/4} = zeta_{4p}^{p+1} and labels below p;
    primed entries use y^{1/4} = zeta_{4(p+1)}^{-p} and labels below p + 1.
    The recursion picks the smallest (or largest) admissible intermediate.
    """

    def __init__(
        self,
        p: int,
        primed: bool = False,
        cache=None,
        verify_every: int = 0,
        intermediate: str = SMALLEST,
    ):
        if intermediate not in (SMALLEST, LARGEST):
            raise ValueError(f'Unknown intermediate choice {intermediate}')
        self.p = p
        self.primed = primed
        self.bound = p + 1 if primed else p
        self.order = 4 * self.bound
        self._quarter = -p if primed else p + 1
        self._cache = cache
        self._verify_every = verify_every
        self._intermediate = intermediate
        self._memo: Dict[Labels, Cyclotomic] = {}
        self._lock = threading.Lock()
        self._cache_hits = 0

    def quarter_power(self, quarters: int) -> Cyclotomic:
        """x^{quarters/4} (or y^{quarters/4} when primed)."""
        return root_of_unity(self.order, self._quarter * quarters)

    def bracket(self, l: int) -> Cyclotomic:
        """[l] = x^{l/2} - x^{-l/2}."""
        return self.quarter_power(2 * l) - self.quarter_power(-2 * l)

    def value(self, key: RKey) -> Cyclotomic:
        if key.p != self.p or key.primed != self.primed:
            raise InvalidKey(
                f'{key} does not belong to this table '
                f'(p={self.p}, primed={self.primed})'
            )
        labels = key.labels()
        if labels in self._memo:
            return self._memo[labels]
        if self._cache is not None:
            stored = self._cache.get(self.p, self.primed, labels)
            if stored is not None:
                return self._accept_cached(key, stored)
        value = self._evaluate(*labels)
        if self._cache is not None:
            self._cache.add(self.p, self.primed, labels, value)
        return value

    def _accept_cached(self, key: RKey, stored: Cyclotomic) -> Cyclotomic:
        labels = key.labels()
        self._cache_hits += 1
        logger.debug(f'Cache hit for {key}')
        # the first hit and every n-th one after it are recomputed
        if self._verify_every and (
            self._cache_hits == 1
            or self._cache_hits % self._verify_every == 0
        ):
            fresh = self._evaluate(*labels)
            if fresh != stored:
                logger.warning(
                    f'Cached value for {key} failed re-verification; '
                    f'replacing it'
                )
                self._cache.discard(self.p, self.primed, labels)
                self._cache.add(self.p, self.primed, labels, fresh)
            return fresh
        with self._lock:
            self._memo.setdefault(labels, stored)
        return stored

    def _zero(self) -> Cyclotomic:
        return Cyclotomic.zero(self.order)

    def _one(self) -> Cyclotomic:
        return Cyclotomic.one(self.order)

    def _pick(self, candidates: List[int]) -> Optional[int]:
        if not candidates:
            return None
        return candidates[0] if self._intermediate == SMALLEST else (
            candidates[-1]
        )

    def _evaluate(self, a, m, n, c, b, d) -> Cyclotomic:
        if not _compatible(self.bound, a, m, n, c, b, d):
            return self._zero()
        labels = (a, m, n, c, b, d)
        memoized = self._memo.get(labels)
        if memoized is not None:
            return memoized
        if m == 1:
            value = self._one() if (b == a and d == c) else self._zero()
        elif n == 1:
            value = self._one() if (b == c and d == a) else self._zero()
        elif m == 2 and n == 2:
            value = self._fundamental(a, c, b, d)
        elif m > 2:
            value = self._reduce_m(a, m, n, c, b, d)
        else:
            value = self._reduce_n(a, m, n, c, b, d)
        with self._lock:
            return self._memo.setdefault(labels, value)

    def _fundamental(self, a: int, l: int, b: int, d: int) -> Cyclotomic:
        """Entries r(a, 2, 2, l)_{b, d}."""
        if a in (l + 2, l - 2):
            return self.quarter_power(1)
        denominator = self.bracket(l)
        if denominator.is_zero():
            raise ZeroDenominator(
                f'[{l}] vanishes at p={self.p}; label out of range'
            )
        ratio = self.bracket(1) / denominator
        if b == d == l + 1:
            return -self.quarter_power(-1 - 2 * l) * ratio
        if b == d == l - 1:
            return self.quarter_power(-1 + 2 * l) * ratio
        if b == l + 1 and d == l - 1:
            return self.quarter_power(-1) * self.bracket(l + 1) / denominator
        if b == l - 1 and d == l + 1:
            return self.quarter_power(-1) * self.bracket(l - 1) / denominator
        return self._zero()

    def _reduce_m(self, a, m, n, c, b, d) -> Cyclotomic:
        # r(a,m,n,c)_{b,d} = sum_d1 r(a,2,n,d1)_{a1,d} r(a1,m-1,n,c)_{b,d1}
        a1 = self._pick([
            t for t in range(1, self.bound)
            if truncated_fusion(self.bound, 2, a, t)
            and truncated_fusion(self.bound, m - 1, t, b)
        ])
        total = self._zero()
        if a1 is None:
            return total
        for d1 in range(1, self.bound):
            left = self._evaluate(a, 2, n, d1, a1, d)
            if left.is_zero():
                continue
            right = self._evaluate(a1, m - 1, n, c, b, d1)
            if not right.is_zero():
                total = total + left * right
        return total

    def _reduce_n(self, a, m, n, c, b, d) -> Cyclotomic:
        # r(a,m,n,c)_{b,d} = sum_d1 r(a,m,2,c1)_{b,d1} r(d1,m,n-1,c)_{c1,d}
        c1 = self._pick([
            t for t in range(1, self.bound)
            if truncated_fusion(self.bound, 2, b, t)
            and truncated_fusion(self.bound, n - 1, t, c)
        ])
        total = self._zero()
        if c1 is None:
            return total
        for d1 in range(1, self.bound):
            left = self._evaluate(a, m, 2, c1, b, d1)
            if left.is_zero():
                continue
            right = self._evaluate(d1, m, n - 1, c, c1, d)
            if not right.is_zero():
                total = total + left * right
        return total


@dataclass(frozen=True)
class BraidingMatrix:
    """Rows and columns are intermediate indices in ascending order."""

    p: int
    externals: Tuple[int, int, int, int]
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    entries: Tuple[Tuple[Cyclotomic, ...], ...]

    def entry(self, row: int, col: int) -> Cyclotomic:
        try:
            return self.entries[self.rows.index(row)][self.cols.index(col)]
        except ValueError:
            raise InvalidLabel(
                f'({row}, {col}) is not an entry of the matrix for '
                f'externals {self.externals}',
                category='braiding',
            )

    def is_square(self) -> bool:
        return len(self.rows) == len(self.cols)


class BraidingCalculator:
    """Braiding elements of one minimal model, sharing memo tables."""

    def __init__(self, p: int, cache=None, verify_every: int = 0):
        self.p = p
        self.r = RMatrix(p, cache=cache, verify_every=verify_every)
        self.r_primed = RMatrix(
            p, primed=True, cache=cache, verify_every=verify_every
        )

    @property
    def order(self) -> int:
        return 4 * self.p * (self.p + 1)

    def element(
        self, primed: Sequence[int], unprimed: Sequence[int]
    ) -> Cyclotomic:
        """phase * r'(a',m',n',c')_{b',d'} * r(a,m,n,c)_{b,d}."""
        primed_key = RKey(self.p, *primed, primed=True)
        key = RKey(self.p, *unprimed)
        a_, m_, n_, c_, b_, d_ = primed
        a, m, n, c, b, d = unprimed
        integral = -(m_ - 1) * (n - 1) - (n_ - 1) * (m - 1)
        halved = (a - b + c - d) * (n_ + m) + (a_ - b_ + c_ - d_) * (n + m)
        if halved % 2:
            logger.debug(
                f'Half-integer sign exponent {halved}/2 for {key}; '
                f'evaluated as i^{halved}'
            )
        phase = i_power(integral + halved)
        value = phase * self.r_primed.value(primed_key) * self.r.value(key)
        return value.lift(self.order)

    def intermediates(
        self, externals: Tuple[int, int, int, int]
    ) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        a4, a3, a2, a1 = externals
        labels = range(1, self.p)
        rows = tuple(
            mu for mu in labels
            if truncated_fusion(self.p, a3, mu, a4)
            and truncated_fusion(self.p, a2, a1, mu)
        )
        cols = tuple(
            gamma for gamma in labels
            if truncated_fusion(self.p, a2, gamma, a4)
            and truncated_fusion(self.p, a3, a1, gamma)
        )
        return rows, cols

    def matrix(self, externals: Tuple[int, int, int, int]) -> BraidingMatrix:
        """The matrix whose (mu, gamma) entry is the braiding element with
        trivial primed labels and unprimed labels (a4, a3, a2, a1, mu,
        gamma)."""
        rows, cols = self.intermediates(externals)
        if len(rows) != len(cols):
            raise SingularMatrix(
                f'Braiding matrix for {externals} is {len(rows)}x{len(cols)}'
            )
        entries = tuple(
            tuple(
                self.element(TRIVIAL_PRIMED, (*externals, mu, gamma))
                for gamma in cols
            )
            for mu in rows
        )
        return BraidingMatrix(
            p=self.p,
            externals=tuple(externals),
            rows=rows,
            cols=cols,
            entries=entries,
        )


@lru_cache(maxsize=None)
def calculator_for(p: int) -> BraidingCalculator:
    return BraidingCalculator(p)


def bracket(p: int, l: int) -> Cyclotomic:
    return calculator_for(p).r.bracket(l)


def r_matrix(p: int, key: RKey) -> Cyclotomic:
    return calculator_for(p).r.value(key)


def r_matrix_primed(p: int, key: RKey) -> Cyclotomic:
    return calculator_for(p).r_primed.value(key)


def braiding_element(
    p: int, primed: Sequence[int], unprimed: Sequence[int]
) -> Cyclotomic:
    return calculator_for(p).element(primed, unprimed)


def braiding_matrix_q(
    k: int, a4: int, a3: int, a2: int, a1: int,
    calculator: Optional[BraidingCalculator] = None,
) -> BraidingMatrix:
    modules = coset_modules(k)
    for index in (a4, a3, a2, a1):
        if index not in modules:
            raise InvalidLabel(
                f'{index} is not a coset module index for k={k}',
                category='braiding',
            )
    calculator = calculator or calculator_for(k + 6)
    return calculator.matrix((a4, a3, a2, a1))


def invert_matrix(
    entries: Sequence[Sequence[Cyclotomic]],
) -> List[List[Cyclotomic]]:
    """Exact Gauss-Jordan inverse; raises SingularMatrix."""
    size = len(entries)
    if any(len(row) != size for row in entries):
        raise SingularMatrix('Only square matrices can be inverted')
    order = entries[0][0].order if size else 1
    zero, one = Cyclotomic.zero(order), Cyclotomic.one(order)
    work = [
        list(row) + [one if i == j else zero for j in range(size)]
        for i, row in enumerate(entries)
    ]
    for col in range(size):
        pivot = next(
            (r for r in range(col, size) if not work[r][col].is_zero()), None
        )
        if pivot is None:
            raise SingularMatrix(f'No pivot in column {col}')
        work[col], work[pivot] = work[pivot], work[col]
        scale = work[col][col].invert()
        work[col] = [value * scale for value in work[col]]
        for r in range(size):
            factor = work[r][col]
            if r == col or factor.is_zero():
                continue
            work[r] = [
                value - factor * pivot_value
                for value, pivot_value in zip(work[r], work[col])
            ]
    return [row[size:] for row in work]


def transpose(
    entries: Sequence[Sequence[Cyclotomic]],
) -> List[List[Cyclotomic]]:
    return [list(column) for column in zip(*entries)]


def multiply(
    left: Sequence[Sequence[Cyclotomic]],
    right: Sequence[Sequence[Cyclotomic]],
) -> List[List[Cyclotomic]]:
    order = left[0][0].order if left and left[0] else 1
    result = []
    for row in left:
        out_row = []
        for column in zip(*right):
            total = Cyclotomic.zero(order)
            for x, y in zip(row, column):
                total = total + x * y
            out_row.append(total)
        result.append(out_row)
    return result


def braiding_matrix_p(bq: BraidingMatrix) -> BraidingMatrix:
    """B = (Bq^T)^{-1}, so that B^T Bq = I."""
    if not bq.is_square():
        raise SingularMatrix(
            f'Braiding matrix for {bq.externals} is not square'
        )
    inverse = invert_matrix(transpose(bq.entries))
    return BraidingMatrix(
        p=bq.p,
        externals=bq.externals,
        rows=bq.rows,
        cols=bq.cols,
        entries=tuple(tuple(row) for row in inverse),
    )


def verify_inverse_transpose(
    b: BraidingMatrix, bq: BraidingMatrix
) -> Tuple[List[List[Cyclotomic]], bool]:
    """Return B^T Bq and whether it is exactly the identity."""
    product = multiply(transpose(b.entries), bq.entries)
    identity = all(
        value == (1 if i == j else 0)
        for i, row in enumerate(product)
        for j, value in enumerate(row)
    )
    return product, identity

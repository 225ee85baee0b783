"""Lambda relations and the nonvanishing lemma replay.

Every fusion-compatible triple of coset modules carries one coefficient
lambda. Composing intertwiners in the two possible orders gives, for
every ordered quadruple (a, b, c, d), two lists of lambda products that
must contain the same number of nonzero entries (the rank rule). The
replay walks the lemma chain in a fixed order and logs each deduction.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from vircert.domain.entities.certificate import (
    DerivationStep,
    LambdaStatus,
    LambdaTriple,
    Product,
    Quadruple,
    Relation,
    Triple,
    triple_key,
)
from vircert.domain.entities.tower import (
    closure_witness,
    coset_modules,
    fusion_coefficient,
    largest_index,
)
from vircert.domain.exceptions import (
    ParityBranchUnavailable,
    SideConditionFailure,
)

logger = logging.getLogger(__name__)

N = LambdaStatus.NONZERO
Z = LambdaStatus.ZERO
U = LambdaStatus.UNKNOWN

ODD = 'odd'
EVEN = 'even'

# case splits enumerate at most 2**MAX_SPLIT_UNKNOWNS assignments
MAX_SPLIT_UNKNOWNS = 14

Statuses = Dict[Triple, LambdaStatus]


def generate_relations(k: int) -> List[Relation]:
    """One Relation per ordered quadruple of coset indices whose two
    sides are both nonempty."""
    modules = coset_modules(k)

    def fus(x: int, y: int, z: int) -> bool:
        return bool(fusion_coefficient(k, x, y, z))

    relations = []
    for a, b, c, d in product(modules, repeat=4):
        left = tuple(
            (triple_key(c, mu, a), triple_key(b, d, mu))
            for mu in modules
            if fus(c, mu, a) and fus(b, d, mu)
        )
        right = tuple(
            (triple_key(b, beta, a), triple_key(c, d, beta))
            for beta in modules
            if fus(b, beta, a) and fus(c, d, beta)
        )
        if not (left and right):
            continue
        if len(left) != len(right):
            raise SideConditionFailure(
                'relations',
                f'quadruple {(a, b, c, d)} has {len(left)} left and '
                f'{len(right)} right products',
            )
        relations.append(Relation((a, b, c, d), left, right))
    return relations


def product_status(statuses: Statuses, pair: Product) -> LambdaStatus:
    first, second = statuses[pair[0]], statuses[pair[1]]
    if Z in (first, second):
        return Z
    if first == N and second == N:
        return N
    return U


def _count(statuses: Statuses, side: Sequence[Product]) -> Tuple[int, int]:
    known = undecided = 0
    for pair in side:
        status = product_status(statuses, pair)
        if status == N:
            known += 1
        elif status == U:
            undecided += 1
    return known, undecided


def _force(
    statuses: Statuses, side: Sequence[Product], value: LambdaStatus
) -> bool:
    changed = False
    for pair in side:
        if product_status(statuses, pair) != U:
            continue
        x, y = pair
        if value == N:
            for key in pair:
                if statuses[key] == U:
                    statuses[key] = N
                    changed = True
        elif x == y:
            statuses[x] = Z
            changed = True
        elif statuses[x] == N and statuses[y] == U:
            statuses[y] = Z
            changed = True
        elif statuses[y] == N and statuses[x] == U:
            statuses[x] = Z
            changed = True
    return changed


def propagate(statuses: Statuses, relations: Iterable[Relation]) -> bool:
    """Unit propagation of the rank rule to a fixpoint, in place.

    Returns False when some relation can no longer balance.
    """
    relations = list(relations)
    changed = True
    while changed:
        changed = False
        for relation in relations:
            known_l, open_l = _count(statuses, relation.left)
            known_r, open_r = _count(statuses, relation.right)
            if known_l > known_r + open_r or known_r > known_l + open_l:
                return False
            if open_l + open_r == 0:
                continue
            if known_l + open_l == known_r:
                changed |= _force(statuses, relation.right, Z)
                changed |= _force(statuses, relation.left, N)
            elif known_r + open_r == known_l:
                changed |= _force(statuses, relation.left, Z)
                changed |= _force(statuses, relation.right, N)
    return True


def is_balanced(statuses: Statuses, relation: Relation) -> bool:
    def nonzero(side):
        return sum(
            1 for pair in side if product_status(statuses, pair) == N
        )

    return nonzero(relation.left) == nonzero(relation.right)


@dataclass
class PropagationResult:
    k: int
    branch: str
    m: int
    largest: int
    statuses: Dict[Triple, LambdaTriple]
    derivation: List[DerivationStep] = field(default_factory=list)

    def all_nonzero(self) -> bool:
        return all(
            triple.status == N for triple in self.statuses.values()
        )


class LambdaPropagation:
    """Replays the nonvanishing lemma chain for one k.

    Each lemma cites specific quadruples and the fusion multiplicities
    it relies on. Every multiplicity is checked against the coset fusion
    rules before the lemma is applied; a mismatch aborts with
    SideConditionFailure naming it. The statuses table only moves a
    triple from unknown to nonzero.
    """

    def __init__(self, k: int, relations: Optional[List[Relation]] = None):
        self.k = k
        self.p = k + 6
        self.modules = coset_modules(k)
        self.largest = largest_index(k)
        self.relations = (
            relations if relations is not None else generate_relations(k)
        )
        self.by_quadruple: Dict[Quadruple, Relation] = {
            relation.quadruple: relation for relation in self.relations
        }
        self.status: Statuses = {
            triple_key(a, b, c): U
            for a, b, c in product(self.modules, repeat=3)
            if self._fus(a, b, c)
        }
        self.status = dict(sorted(self.status.items()))
        self.provenance: Dict[Triple, int] = {}
        self.steps: List[DerivationStep] = []
        self.branch: Optional[str] = None
        self.m: Optional[int] = None

    def _fus(self, a: int, b: int, c: int) -> bool:
        return bool(fusion_coefficient(self.k, a, b, c))

    def _cited(self, quadruples: Iterable[Quadruple]) -> List[Relation]:
        return [
            self.by_quadruple[q] for q in dict.fromkeys(quadruples)
            if q in self.by_quadruple
        ]

    def _require(
        self, lemma: str, x: int, y: int, z: int, expected: int
    ) -> str:
        actual = fusion_coefficient(self.k, x, y, z)
        if actual != expected:
            raise SideConditionFailure(
                lemma,
                f'N_{{{x},{y}}}^{z} = {actual}, expected {expected}',
                multiplicity=(x, y, z),
            )
        return f'N_{{{x},{y}}}^{z} = {expected}'

    def _record(
        self,
        key: Triple,
        lemma: str,
        method: str,
        relations: Sequence[Quadruple] = (),
        closure_set: Sequence[int] = (),
        side_conditions: Sequence[str] = (),
    ) -> None:
        current = self.status[key]
        if current == Z:
            raise SideConditionFailure(
                lemma, f'lambda{key} was already derived to vanish'
            )
        if current == N:
            return
        self.status[key] = N
        step = DerivationStep(
            index=len(self.steps),
            lemma=lemma,
            target=key,
            method=method,
            relations=tuple(relations),
            closure_set=tuple(closure_set),
            side_conditions=tuple(side_conditions),
        )
        self.provenance[key] = step.index
        self.steps.append(step)
        logger.debug(
            f'k={self.k} step {step.index}: lambda{key} nonzero by '
            f'{lemma} ({method})'
        )

    def case_split(self, target: Triple, relation: Relation) -> bool:
        """True iff no assignment of the other unknowns of ``relation``
        balances it once lambda(target) = 0."""
        unknowns = sorted({
            key for key in relation.triples()
            if key != target and self.status[key] == U
        })
        if len(unknowns) > MAX_SPLIT_UNKNOWNS:
            return False
        for values in product((Z, N), repeat=len(unknowns)):
            trial = dict(self.status)
            trial[target] = Z
            trial.update(zip(unknowns, values))
            if is_balanced(trial, relation):
                return False
        return True

    def derive(
        self,
        key: Triple,
        lemma: str,
        quadruples: Sequence[Quadruple],
        side_conditions: Sequence[str] = (),
    ) -> None:
        """Deduce lambda(key) != 0 from the cited relations alone."""
        if self.status[key] == N:
            return
        cited = self._cited(quadruples)
        if not cited:
            raise SideConditionFailure(
                lemma, f'no relation among {list(quadruples)} for {key}'
            )
        trial = dict(self.status)
        if not propagate(trial, cited):
            raise SideConditionFailure(
                lemma, f'relations {list(quadruples)} are inconsistent'
            )
        if trial[key] == N:
            self._record(
                key, lemma, 'rank',
                relations=[r.quadruple for r in cited],
                side_conditions=side_conditions,
            )
            return
        for relation in cited:
            if self.case_split(key, relation):
                self._record(
                    key, lemma, 'case-split',
                    relations=[relation.quadruple],
                    side_conditions=[
                        *side_conditions,
                        f'relation {relation.quadruple} cannot balance '
                        f'with lambda{key} = 0',
                    ],
                )
                return
        raise SideConditionFailure(
            lemma,
            f'relations {list(quadruples)} do not force lambda{key} '
            f'nonzero',
        )

    def _leaves_closed(
        self, statuses: Statuses, members: Sequence[int]
    ) -> bool:
        inside = set(members)
        for a, b in product(sorted(inside), repeat=2):
            for c in self.modules:
                if c in inside or not self._fus(a, b, c):
                    continue
                if statuses[triple_key(a, b, c)] != Z:
                    return False
        return True

    def refute(
        self,
        key: Triple,
        lemma: str,
        quadruples: Sequence[Quadruple],
        side_conditions: Sequence[str] = (),
        closure_set: Optional[Sequence[int]] = None,
        splits: Sequence[Triple] = (),
    ) -> None:
        """Assume lambda(key) = 0 and derive a contradiction in every
        case of ``splits``.

        A case closes either when the cited relations cannot balance or
        when every lambda leaving ``closure_set`` is forced to vanish,
        which would make that non-closed set a subalgebra.
        """
        if self.status[key] == N:
            return
        cited = self._cited(quadruples)
        conditions = list(side_conditions)
        if closure_set is not None:
            witness = closure_witness(self.k, set(closure_set))
            if witness is None:
                raise SideConditionFailure(
                    lemma,
                    f'index set {sorted(closure_set)} is fusion closed',
                )
            conditions.append(
                f'index set {sorted(closure_set)} is not fusion closed: '
                + self._require(lemma, *witness, 1)
            )
        used_closure = False
        for values in product((Z, N), repeat=len(splits)):
            trial = dict(self.status)
            trial[key] = Z
            for split_key, value in zip(splits, values):
                if trial[split_key] == U:
                    trial[split_key] = value
            if not propagate(trial, cited):
                continue
            if closure_set is not None and self._leaves_closed(
                trial, closure_set
            ):
                used_closure = True
                continue
            raise SideConditionFailure(
                lemma, f'no contradiction from lambda{key} = 0'
            )
        if splits:
            conditions.append(
                'cases on ' + ', '.join(f'lambda{s}' for s in splits)
            )
        self._record(
            key,
            lemma,
            'closure' if used_closure else 'rank',
            relations=[r.quadruple for r in cited],
            closure_set=closure_set or (),
            side_conditions=conditions,
        )

    def run(self) -> PropagationResult:
        self._vacuum()
        self._check_alternation()
        self._three_chain()
        self._select_branch()
        if self.branch == ODD:
            self._odd_branch()
        else:
            self._even_branch()
        self._check_diagonal()
        self._recursion()
        self._audit()
        return PropagationResult(
            k=self.k,
            branch=self.branch,
            m=self.m,
            largest=self.largest,
            statuses={
                key: LambdaTriple(key, status, self.provenance.get(key))
                for key, status in self.status.items()
            },
            derivation=list(self.steps),
        )

    def _vacuum(self) -> None:
        for j in self.modules:
            self._record(
                triple_key(1, j, j),
                'vacuum',
                'vacuum',
                side_conditions=[self._require('vacuum', 1, j, j, 1)],
            )

    def _check_alternation(self) -> None:
        for relation in self.relations:
            if relation.quadruple[0] != 1:
                continue
            if len(relation.left) != 1 or len(relation.right) != 1:
                raise SideConditionFailure(
                    'alternation',
                    f'relation {relation.quadruple} has more than one '
                    f'product on a side',
                )

    def _three_chain(self) -> None:
        lemma = 'three-chain'
        for i in range(5, self.largest + 1, 2):
            conditions = [self._require(lemma, 3, i - 2, i, 1)]
            quadruples = []
            for p in range(3, i - 1, 2):
                q = i + 1 - p
                for x, y, z in ((i, q - 2, p - 2), (i, q - 2, p),
                                (i, p, q - 4), (i, p, q - 2)):
                    conditions.append(self._require(lemma, x, y, z, 0))
                quadruples.append((3, p, q - 2, i))
            for p in range(1, i - 3, 2):
                for q in range(1, i - 1, 2):
                    quadruples.extend(
                        (3, p, q, r) for r in self.modules if r >= i
                    )
            self.refute(
                triple_key(3, i - 2, i),
                lemma,
                quadruples,
                conditions,
                closure_set=[x for x in self.modules if x <= i - 2],
            )

    def _select_branch(self) -> None:
        top = self.largest
        square = [c for c in self.modules if self._fus(top, top, c)]
        if self._fus(top, top, 3) and square == [1, 3]:
            self.branch, self.m = ODD, top
        elif not self._fus(top, top, 3):
            self.branch, self.m = EVEN, top - 1
        else:
            raise ParityBranchUnavailable(
                f'{top} x {top} = {square} matches neither branch for '
                f'k={self.k}'
            )
        logger.debug(f'k={self.k}: {self.branch} branch with m={self.m}')

    def _odd_branch(self) -> None:
        m = self.m
        lemma = 'odd-top-square'
        conditions = [
            self._require(lemma, m, m, 1, 1),
            self._require(lemma, m, m, 3, 1),
        ]
        conditions.extend(
            self._require(lemma, m, m, c, 0)
            for c in self.modules if c >= 5
        )
        self.refute(
            triple_key(m, m, 3), lemma, [], conditions, closure_set=[1, m]
        )

        lemma = 'odd-top-pairs'
        for i in range(3, m + 1, 2):
            conditions = [
                self._require(lemma, i, m, m + 3 - i, 1),
                self._require(lemma, m, i - 2, m + 3 - i, 1),
                self._require(lemma, m, i - 2, m + 1 - i, 0),
                self._require(lemma, i, i - 2, 1, 0),
            ]
            for key in (triple_key(m, i, m + 3 - i),
                        triple_key(m, i - 2, m + 3 - i)):
                if key in self.status:
                    self.derive(key, lemma, [(m, i, m, i - 2)], conditions)
        for key, status in self.status.items():
            if m in key and status != N:
                raise SideConditionFailure(
                    lemma, f'lambda{key} undetermined'
                )

        lemma = 'odd-three-diagonal'
        for i in self.modules:
            if i < 3 or not self._fus(i, i, 3):
                continue
            conditions = [
                self._require(lemma, m, i, m + 1 - i, 1),
                self._require(lemma, m, i, m + 3 - i, 1),
            ]
            self.derive(
                triple_key(3, i, i), lemma, [(m, m, i, i)], conditions
            )

    def _even_branch(self) -> None:
        lemma = 'even-five-diagonal'
        for i in self.modules:
            if i < 3 or not self._fus(i, i, 5):
                continue
            self.derive(
                triple_key(5, i, i), lemma, [(3, 3, i, i)],
                [self._require(lemma, 3, 3, 5, 1),
                 self._require(lemma, i, i, 5, 1)],
            )

        lemma = 'even-five-shift'
        for i in self.modules:
            if not self._fus(i, i + 4, 5):
                continue
            conditions = [
                self._require(lemma, x, y, z, 0)
                for x, y, z in ((i, i + 4, 1), (i, i + 4, 3),
                                (3, i + 4, i - 2), (3, i + 4, i))
            ]
            self.derive(
                triple_key(5, i, i + 4), lemma, [(3, 3, i, i + 4)],
                conditions,
            )

        lemma = 'even-three-five'
        quadruples = []
        for i in self.modules:
            quadruples.extend(
                [(3, 3, i, i + 2), (3, 5, i, i + 2), (3, 5, i, i),
                 (3, 3, i, i)]
            )
        quarter = [x for x in self.modules if x > 1 and x % 4 == 1]
        for r in self.modules:
            if r % 4 == 3:
                quadruples.extend(
                    (5, r, a, b) for a, b in product(quarter, repeat=2)
                )
        self.refute(
            triple_key(3, 5, 5),
            lemma,
            quadruples,
            [self._require(lemma, 3, 5, 5, 1)],
            closure_set=[x for x in self.modules if x % 4 == 1],
            splits=[triple_key(3, 3, 3)],
        )

        lemma = 'even-three-cube'
        self.derive(
            triple_key(3, 3, 3), lemma, [(3, 5, 3, 5)],
            [self._require(lemma, 3, 3, 3, 1),
             self._require(lemma, 5, 5, 3, 1)],
        )

        lemma = 'even-three-diagonal'
        for i in range(7, self.largest + 1, 2):
            if not self._fus(i, i, 3):
                continue
            self.refute(
                triple_key(3, i, i),
                lemma,
                [(3, 3, i - 2, i), (3, 3, i, i + 2), (3, 5, i, i)],
                [self._require(lemma, i, i, 3, 1),
                 self._require(lemma, 5, i, i - 2, 1)],
            )

    def _check_diagonal(self) -> None:
        for i in self.modules:
            key = triple_key(3, i, i)
            if key in self.status and self.status[key] != N:
                raise SideConditionFailure(
                    'three-diagonal', f'lambda{key} undetermined'
                )

    def _recursion(self) -> None:
        for p in range(3, self.largest + 1, 2):
            lemma = f'recursion from {p}'
            for key in list(self.status):
                if self.status[key] != U or key[0] != p + 2:
                    continue
                _, b, c = key
                self.derive(
                    key, lemma, [(3, p, b, c)],
                    [self._require(lemma, 3, p, p + 2, 1),
                     self._require(lemma, b, c, p + 2, 1)],
                )

    def _audit(self) -> None:
        undecided = [key for key, s in self.status.items() if s != N]
        if undecided:
            raise SideConditionFailure(
                'completeness', f'undetermined lambdas {undecided}'
            )
        for relation in self.relations:
            if not is_balanced(self.status, relation):
                raise SideConditionFailure(
                    'rank-rule audit',
                    f'relation {relation.quadruple} is unbalanced',
                )


def propagate_nonvanishing(
    k: int, relations: Optional[List[Relation]] = None
) -> PropagationResult:
    """Replay the nonvanishing argument for k and return every lambda
    status together with the derivation log."""
    return LambdaPropagation(k, relations).run()

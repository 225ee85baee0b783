import logging
from typing import Dict, List, Mapping, Optional, Tuple

from vircert.domain.cyclotomic import Cyclotomic
from vircert.domain.entities.braiding import (
    BraidingCalculator,
    BraidingMatrix,
    braiding_matrix_p,
    braiding_matrix_q,
    verify_inverse_transpose,
)
from vircert.domain.entities.certificate import (
    REFERENCE,
    Certificate,
    ElementRecord,
    MatrixCheck,
    Quadruple,
    Requirement,
)
from vircert.domain.entities.tower import (
    coset_modules,
    fusion_coefficient,
    longest_summand_index,
)
from vircert.domain.exceptions import (
    BoundExceeded,
    InversionFailure,
    PrecisionExhausted,
    SingularMatrix,
    VircertError,
)
from vircert.domain.intervals import (
    DEFAULT_INITIAL_PRECISION,
    DEFAULT_MAX_PRECISION,
    preview,
    sign_imag,
    sign_real,
)
from vircert.domain.propagation import propagate_nonvanishing

logger = logging.getLogger(__name__)

# Named modules of the k = 1 algebra: L(25/28, 34/7) and L(25/28, 9/7).
REFERENCE_MODULES = {'Q2': 5, 'Q3': 3}

# (name, (a4, a3, a2, a1), row, col) in module names
_REFERENCE_ELEMENTS = (
    ('B~[Q2,Q2;Q3,Q3](Q3,Q2)', ('Q2', 'Q3', 'Q3', 'Q2'), 'Q3', 'Q2'),
    ('B~[Q3,Q2;Q3,Q2](Q3,Q3)', ('Q3', 'Q3', 'Q2', 'Q2'), 'Q3', 'Q3'),
    ('B~[Q2,Q3;Q3,Q3](Q3,Q2)', ('Q2', 'Q3', 'Q3', 'Q3'), 'Q3', 'Q2'),
    ('B~[Q3,Q3;Q2,Q3](Q2,Q3)', ('Q3', 'Q2', 'Q3', 'Q3'), 'Q2', 'Q3'),
)


def lambda_square_requirements(k: int) -> List[Requirement]:
    """Elements B(a, b, c) = entry (t, c) of the braiding matrix with
    externals (a, b, t, t), one per non-vacuum triple with
    N_{b,t}^a N_{t,t}^t N_{t,c}^a N_{b,t}^c = 1."""
    modules = coset_modules(k)
    t = longest_summand_index(k)

    def fus(x: int, y: int, z: int) -> bool:
        return bool(fusion_coefficient(k, x, y, z))

    if not fus(t, t, t):
        return []
    requirements = []
    for a in modules[1:]:
        for b in modules[1:]:
            for c in modules[1:]:
                if fus(b, t, a) and fus(t, c, a) and fus(b, t, c):
                    requirements.append(Requirement(
                        name=f'B({a},{b},{c})',
                        triple=(a, b, c),
                        externals=(a, b, t, t),
                        row=t,
                        col=c,
                    ))
    return requirements


def reference_requirements(k: int) -> List[Requirement]:
    """The four named elements of the k = 1 uniqueness argument; empty
    for every other k."""
    if k != 1:
        return []
    index = REFERENCE_MODULES
    return [
        Requirement(
            name=name,
            triple=(index[externals[0]], index[externals[1]], index[col]),
            externals=tuple(index[label] for label in externals),
            row=index[row],
            col=index[col],
            kind=REFERENCE,
        )
        for name, externals, row, col in _REFERENCE_ELEMENTS
    ]


def all_requirements(k: int) -> List[Requirement]:
    return lambda_square_requirements(k) + reference_requirements(k)


def _matrices(
    k: int,
    requirements: List[Requirement],
    calculator: Optional[BraidingCalculator],
) -> Dict[Quadruple, BraidingMatrix]:
    matrices: Dict[Quadruple, BraidingMatrix] = {}
    for requirement in requirements:
        if requirement.externals not in matrices:
            matrices[requirement.externals] = braiding_matrix_q(
                k, *requirement.externals, calculator=calculator
            )
    return matrices


def check_matrix(bq: BraidingMatrix) -> MatrixCheck:
    """Invert the transpose of bq and confirm B^T bq = I exactly."""
    try:
        b = braiding_matrix_p(bq)
    except SingularMatrix as e:
        return MatrixCheck(
            bq.externals, len(bq.rows), False, False, detail=str(e)
        )
    _, identity = verify_inverse_transpose(b, bq)
    return MatrixCheck(bq.externals, len(bq.rows), True, identity)


def verify_sigma_consistency(
    k: int,
    calculator: Optional[BraidingCalculator] = None,
    matrices: Optional[Dict[Quadruple, BraidingMatrix]] = None,
) -> bool:
    """lambda = 1 solves the braiding equations (B^T B~ = I for every
    certificate matrix) and every required element is nonzero, so each
    required lambda squares to one.

    Raises InversionFailure when some matrix cannot be inverted.
    """
    requirements = all_requirements(k)
    if matrices is None:
        matrices = _matrices(k, requirements, calculator)
    for bq in matrices.values():
        check = check_matrix(bq)
        if not check.inverted:
            raise InversionFailure(
                f'Braiding matrix {bq.externals} is singular: {check.detail}'
            )
        if not check.identity:
            return False
    return all(
        not matrices[r.externals].entry(r.row, r.col).is_zero()
        for r in requirements
    )


def _evaluate_element(
    requirement: Requirement,
    value: Cyclotomic,
    initial_precision: int,
    max_precision: int,
    preview_digits: int,
) -> ElementRecord:
    record = ElementRecord(requirement=requirement, value=value)
    record.is_zero = value.is_zero()
    record.lambda_square_forced = not record.is_zero
    record.sign_re = sign_real(value, initial_precision, max_precision)
    record.sign_im = sign_imag(value, initial_precision, max_precision)
    record.preview = preview(value, preview_digits)
    return record


def certify(
    k: int,
    max_k: Optional[int] = None,
    calculator: Optional[BraidingCalculator] = None,
    initial_precision: int = DEFAULT_INITIAL_PRECISION,
    max_precision: int = DEFAULT_MAX_PRECISION,
    preview_digits: int = 12,
    overrides: Optional[Mapping[str, Cyclotomic]] = None,
) -> Certificate:
    """Assemble the uniqueness certificate for k.

    Engine failures after the bound check become reasons of an INCONCLUSIVE
    verdict. ``overrides`` replaces required elements by name before they
    are judged.

    Args:
        k: Tower index, k >= 1.
        max_k: Configured bound for k.
        calculator: Braiding calculator for p = k + 6, possibly cached.
        initial_precision: Starting bits of the sign refinement.
        max_precision: Bits after which a sign is reported undecided.
        preview_digits: Digits of the numeric preview.
        overrides: Element values substituted by requirement name.

    Returns:
        Certificate: The certificate with its verdict decided.
    """
    if max_k is not None and k > max_k:
        raise BoundExceeded(
            f'k={k} exceeds the configured bound {max_k}',
            category='uniqueness-certifier',
        )
    modules = coset_modules(k)
    certificate = Certificate(k=k, p=k + 6, modules=modules)
    calculator = calculator or BraidingCalculator(k + 6)
    overrides = dict(overrides or {})

    try:
        result = propagate_nonvanishing(k)
        certificate.branch, certificate.m = result.branch, result.m
        certificate.derivation = result.derivation
        certificate.lambdas = list(result.statuses.values())
    except VircertError as e:
        logger.warning(f'k={k}: propagation stopped: {e}')
        certificate.reasons.append(f'{e.category}: {e}')

    try:
        certificate.t = longest_summand_index(k)
        requirements = all_requirements(k)
        matrices = _matrices(k, requirements, calculator)
        certificate.matrices = [check_matrix(m) for m in matrices.values()]
        for requirement in requirements:
            value = matrices[requirement.externals].entry(
                requirement.row, requirement.col
            )
            value = overrides.get(requirement.name, value)
            try:
                record = _evaluate_element(
                    requirement,
                    value,
                    initial_precision,
                    max_precision,
                    preview_digits,
                )
            except PrecisionExhausted as e:
                record = ElementRecord(requirement=requirement, value=value)
                record.is_zero = value.is_zero()
                certificate.reasons.append(
                    f'{e.category}: {requirement.name}: {e}'
                )
            certificate.elements.append(record)
    except VircertError as e:
        logger.warning(f'k={k}: element evaluation stopped: {e}')
        certificate.reasons.append(f'{e.category}: {e}')

    verdict = certificate.decide()
    logger.info(
        f'k={k}: {verdict.value} with '
        f'{certificate.nonzero_elements}/{len(certificate.elements)} '
        f'nonzero elements'
    )
    return certificate


def sign_table(certificate: Certificate) -> List[Tuple[str, int, int]]:
    return [
        (e.requirement.name, e.sign_re, e.sign_im)
        for e in certificate.elements
    ]

from typing import Optional

from vircert.domain.entities.certificate import (
    LAMBDA_SQUARE,
    REFERENCE,
    Certificate,
    DerivationStep,
    ElementRecord,
)
from vircert.interfaces.schemas.cyclotomic_schema import (
    CyclotomicSchema,
    NumericValue,
    PreviewSchema,
)
from vircert.interfaces.schemas.document_schema import (
    CertificateDocument,
    ElementSchema,
    MatrixCheckSchema,
    StepSchema,
    schema_name,
)

SIGNS = {1: '+', -1: '-', 0: '0', None: '?'}


class CertificatePresenter:
    """
    Handles the formatting of uniqueness certificates.
    """

    @staticmethod
    def present_step(step: DerivationStep) -> StepSchema:
        return StepSchema(
            index=step.index,
            lemma=step.lemma,
            target=step.target,
            method=step.method,
            relations=list(step.relations),
            closure_set=list(step.closure_set),
            side_conditions=list(step.side_conditions),
        )

    @staticmethod
    def present_element(element: ElementRecord) -> ElementSchema:
        requirement = element.requirement
        value: Optional[NumericValue] = None
        if element.value is not None:
            rendered = None
            if element.preview is not None:
                rendered = PreviewSchema(
                    re=element.preview[0], im=element.preview[1]
                )
            value = NumericValue(
                exact=CyclotomicSchema.from_value(element.value),
                preview=rendered,
            )
        return ElementSchema(
            name=requirement.name,
            kind=requirement.kind,
            triple=requirement.triple,
            externals=requirement.externals,
            entry=(requirement.row, requirement.col),
            value=value,
            is_zero=element.is_zero,
            sign_re=element.sign_re,
            sign_im=element.sign_im,
            lambda_square_forced=element.lambda_square_forced,
        )

    @staticmethod
    def present_certificate(certificate: Certificate) -> CertificateDocument:
        """
        Formats a certificate as its versioned JSON document.

        Args:
            certificate (Certificate): The decided certificate.

        Returns:
            CertificateDocument: The document model.
        """
        return CertificateDocument(
            schema_=schema_name('certificate'),
            k=certificate.k,
            p=certificate.p,
            modules=certificate.modules,
            t=certificate.t,
            m=certificate.m,
            branch=certificate.branch,
            lambdas=len(certificate.lambdas),
            derivation=[
                CertificatePresenter.present_step(step)
                for step in certificate.derivation
            ],
            elements=[
                CertificatePresenter.present_element(element)
                for element in certificate.elements
            ],
            lambda_square_elements=len(
                certificate.elements_of(LAMBDA_SQUARE)
            ),
            reference_elements=len(certificate.elements_of(REFERENCE)),
            matrices=[
                MatrixCheckSchema(
                    externals=check.externals,
                    size=check.size,
                    inverted=check.inverted,
                    identity=check.identity,
                )
                for check in certificate.matrices
            ],
            verdict=certificate.verdict.value,
            reasons=certificate.reasons,
        )

    @staticmethod
    def present_certificate_table(certificate: Certificate) -> str:
        lines = [
            f'k={certificate.k} p={certificate.p} t={certificate.t} '
            f'm={certificate.m} branch={certificate.branch}',
            f'lambdas: {len(certificate.lambdas)}, derivation steps: '
            f'{len(certificate.derivation)}',
            f'elements: {len(certificate.elements_of(LAMBDA_SQUARE))} '
            f'lambda-square, {len(certificate.elements_of(REFERENCE))} '
            f'reference',
        ]
        for element in certificate.elements:
            preview = element.preview or ('?', '?')
            lines.append(
                f'  {element.requirement.name:<26} '
                f'Re {SIGNS[element.sign_re]}  Im {SIGNS[element.sign_im]}  '
                f'~ {preview[0]} + {preview[1]}i'
            )
        lines.append(f'verdict: {certificate.verdict.value}')
        lines.extend(f'  reason: {reason}' for reason in certificate.reasons)
        return '\n'.join(lines)

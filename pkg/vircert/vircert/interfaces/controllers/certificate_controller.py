from typing import Optional

from vircert.domain.entities.certificate import Certificate
from vircert.interfaces.presenters.certificate_presenter import (
    CertificatePresenter,
)
from vircert.interfaces.schemas.document_schema import CertificateDocument


class CertificateController:
    """
    Controller responsible for uniqueness certificates.
    """

    def __init__(self, certify_use_case):
        self.certify_use_case = certify_use_case

    def certify(
        self, k: int, max_precision: Optional[int] = None
    ) -> Certificate:
        return self.certify_use_case.execute(k, max_precision=max_precision)

    @staticmethod
    def document(certificate: Certificate) -> CertificateDocument:
        return CertificatePresenter.present_certificate(certificate)

    @staticmethod
    def table(certificate: Certificate) -> str:
        return CertificatePresenter.present_certificate_table(certificate)

import json

from vircert.domain.cyclotomic import Cyclotomic
from vircert.domain.entities.certificate import (
    Certificate,
    DerivationStep,
    ElementRecord,
    LambdaStatus,
    LambdaTriple,
    MatrixCheck,
    Requirement,
)
from vircert.interfaces.presenters.certificate_presenter import (
    CertificatePresenter,
)


class TestCertificatePresenter:
    """Tests for the CertificatePresenter."""

    def setup_method(self):
        """Set up a decided one-element certificate."""
        self.certificate = Certificate(
            k=2,
            p=8,
            modules=[1, 3, 5, 7],
            t=3,
            m=6,
            branch='even',
            derivation=[
                DerivationStep(0, 'vacuum', (1, 1, 1), 'vacuum')
            ],
            lambdas=[LambdaTriple((1, 1, 1), LambdaStatus.NONZERO, 0)],
            elements=[
                ElementRecord(
                    requirement=Requirement(
                        'B(3,3,3)', (3, 3, 3), (3, 3, 3, 3), 3, 3
                    ),
                    value=Cyclotomic.one(4),
                    is_zero=False,
                    sign_re=1,
                    sign_im=0,
                    lambda_square_forced=True,
                    preview=('1.0', '0.0'),
                )
            ],
            matrices=[MatrixCheck((3, 3, 3, 3), 3, True, True)],
        )
        self.certificate.decide()

    def test_present_certificate(self):
        """The document mirrors the certificate."""
        # Act
        document = CertificatePresenter.present_certificate(self.certificate)

        # Assert
        assert document.schema_ == 'vircert/certificate/v1'
        assert document.verdict == 'UNIQUE'
        assert document.lambdas == 1
        assert document.elements[0].entry == (3, 3)
        assert document.elements[0].value.preview.re == '1.0'
        assert document.matrices[0].identity

    def test_document_is_json_serializable(self):
        # Act
        document = CertificatePresenter.present_certificate(self.certificate)
        payload = json.loads(
            json.dumps(document.model_dump(mode='json', by_alias=True))
        )

        # Assert
        assert payload['schema'] == 'vircert/certificate/v1'
        assert payload['derivation'][0]['method'] == 'vacuum'

    def test_element_without_value(self):
        """Unevaluated elements carry no value."""
        # Arrange
        element = ElementRecord(
            requirement=self.certificate.elements[0].requirement
        )

        # Act
        schema = CertificatePresenter.present_element(element)

        # Assert
        assert schema.value is None
        assert schema.is_zero is None

    def test_present_certificate_table(self):
        # Act
        table = CertificatePresenter.present_certificate_table(
            self.certificate
        )

        # Assert
        lines = table.splitlines()
        assert lines[0] == 'k=2 p=8 t=3 m=6 branch=even'
        assert lines[2] == 'elements: 1 lambda-square, 0 reference'
        assert 'B(3,3,3)' in lines[3]
        assert 'Re +  Im 0' in lines[3]
        assert lines[-1] == 'verdict: UNIQUE'

    def test_k1_lists_reference_elements_apart(self, certificate_k1):
        """Eight lambda-square elements and four reference elements."""
        # Act
        document = CertificatePresenter.present_certificate(certificate_k1)

        # Assert
        kinds = [element.kind for element in document.elements]
        assert kinds == ['lambda-square'] * 8 + ['reference'] * 4
        assert document.lambda_square_elements == 8
        assert document.reference_elements == 4
        assert document.elements[8].name == 'B~[Q2,Q2;Q3,Q3](Q3,Q2)'

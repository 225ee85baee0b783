import json
from unittest.mock import Mock, patch

import pytest
from typer.testing import CliRunner

from vircert.cli.app import (
    EXIT_ERROR,
    EXIT_INCONCLUSIVE,
    app,
    handle_error,
    parse_indices,
)
from vircert.domain.entities.certificate import Certificate
from vircert.domain.exceptions import (
    PrecisionExhausted,
    SingularMatrix,
    VircertError,
)
from vircert.interfaces.controllers.certificate_controller import (
    CertificateController,
)


@pytest.fixture
def runner(quiet_environment):
    """CLI runner on default settings."""
    return CliRunner(mix_stderr=False)


class TestCommands:
    """Tests for the command line surface."""

    def test_kac_weights(self, runner):
        """kac weights prints the versioned weights document."""
        # Act
        result = runner.invoke(app, ['kac', 'weights', '--p', '7'])

        # Assert
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document['schema'] == 'vircert/weights/v1'
        assert document['central_charge'] == '25/28'
        assert len(document['weights']) == 21

    def test_kac_weights_table(self, runner):
        # Act
        result = runner.invoke(
            app, ['--output', 'table', 'kac', 'weights', '--p', '3']
        )

        # Assert
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == 'p=3, c=1/2'

    def test_kac_canonical(self, runner):
        # Act
        result = runner.invoke(
            app, ['kac', 'canonical', '--p', '7', '--label', '7,1']
        )

        # Assert
        assert result.exit_code == 0
        assert json.loads(result.stdout)['canonical'] == [1, 6]

    def test_fuse(self, runner):
        # Act
        result = runner.invoke(
            app, ['fuse', '--p', '7', '--a', '1,3', '--b', '1,3']
        )

        # Assert
        assert result.exit_code == 0
        assert json.loads(result.stdout)['product'] == [
            [1, 1, 1], [1, 3, 1], [1, 5, 1]
        ]

    def test_gko(self, runner):
        # Act
        result = runner.invoke(
            app, ['gko', '--m', '3', '--epsilon', '0', '--n', '0']
        )

        # Assert
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document['gaps'] == ['0', '1', '4']
        assert document['branch'][0] == [0, 1, 4, 0]

    def test_tower_build(self, runner):
        """tower build --k 2 reports the sector weights."""
        # Act
        result = runner.invoke(app, ['tower', 'build', '--k', '2'])

        # Assert
        assert result.exit_code == 0
        vacuum = json.loads(result.stdout)['sectors']['0']
        assert {path['weights'][-1][1] for path in vacuum} == {
            '0', '5/4', '19/4', '21/2'
        }

    def test_tower_griess(self, runner):
        result = runner.invoke(app, ['tower', 'griess', '--k', '4'])
        assert json.loads(result.stdout)['holds'] is True

    def test_braid_r(self, runner):
        # Act
        result = runner.invoke(
            app, ['braid', 'r', '--p', '8', '--key', '5,2,2,3,4,4']
        )

        # Assert
        assert result.exit_code == 0
        value = json.loads(result.stdout)['value']
        assert value['exact'] == {'order': 32, 'terms': [[9, 1, 1]]}

    def test_braid_matrix(self, runner):
        # Act
        result = runner.invoke(
            app, ['braid', 'matrix', '--k', '1', '--ext', '3,3,1,3']
        )

        # Assert
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document['rows'] == [3]
        assert document['inverse_transpose_verified'] is True

    def test_certify_writes_document(self, runner, tmp_path):
        """certify --k 2 exits 0 and stores the UNIQUE certificate."""
        # Arrange
        path = tmp_path / 'k2.json'

        # Act
        result = runner.invoke(
            app, ['certify', '--k', '2', '--json', str(path)]
        )

        # Assert
        assert result.exit_code == 0
        stored = json.loads(path.read_text(encoding='utf-8'))
        assert stored['verdict'] == 'UNIQUE'
        assert stored['schema'] == 'vircert/certificate/v1'
        assert len(stored['elements']) == 11

    def test_certify_k4_is_inconclusive(self, runner):
        """k = 4 has required elements that vanish, so certify exits 2."""
        # Act
        result = runner.invoke(app, ['certify', '--k', '4'])

        # Assert
        assert result.exit_code == EXIT_INCONCLUSIVE
        document = json.loads(result.stdout)
        assert document['verdict'] == 'INCONCLUSIVE'
        assert any(
            reason.endswith('is not certified nonzero')
            for reason in document['reasons']
        )

    @patch('vircert.cli.app.get_certificate_controller')
    def test_certify_inconclusive_exit_code(self, mock_factory, runner):
        """An inconclusive verdict exits with code 2."""
        # Arrange
        certificate = Certificate(k=1, p=7, modules=[1, 3, 5])
        certificate.decide()
        controller = Mock()
        controller.certify.return_value = certificate
        controller.document.side_effect = CertificateController.document
        controller.table.side_effect = CertificateController.table
        mock_factory.return_value = controller

        # Act
        result = runner.invoke(app, ['certify', '--k', '1'])

        # Assert
        assert result.exit_code == EXIT_INCONCLUSIVE
        assert '"INCONCLUSIVE"' in result.stdout


class TestErrors:
    """Tests for error reporting."""

    @pytest.mark.parametrize('bits', ['0', '32'])
    def test_certify_rejects_low_precision(self, runner, bits):
        """A precision ceiling below the floor is an invalid argument."""
        # Act
        result = runner.invoke(
            app, ['certify', '--k', '1', '--max-precision', bits]
        )

        # Assert
        assert result.exit_code == EXIT_ERROR
        document = json.loads(result.stdout)
        assert document['error'] == 'invalid-argument'
        assert 'at least 64 bits' in document['detail']

    def test_invalid_parameter(self, runner):
        """Bad parameters exit 1 with a categorized error document."""
        # Act
        result = runner.invoke(app, ['kac', 'weights', '--p', '1'])

        # Assert
        assert result.exit_code == EXIT_ERROR
        assert '"invalid-argument"' in result.stdout
        assert '"kac-data"' in result.stdout

    def test_bound_from_environment(self, runner, monkeypatch):
        # Arrange
        monkeypatch.setenv('VIRCERT_MAX_K', '1')

        # Act
        result = runner.invoke(app, ['tower', 'build', '--k', '2'])

        # Assert
        assert result.exit_code == EXIT_ERROR
        assert '"coset-tower"' in result.stdout

    def test_invalid_configuration(self, runner, monkeypatch):
        # Arrange
        monkeypatch.setenv('VIRCERT_OUTPUT', 'xml')

        # Act
        result = runner.invoke(app, ['kac', 'weights', '--p', '3'])

        # Assert
        assert result.exit_code == EXIT_ERROR
        assert '"invalid-configuration"' in result.stdout

    def test_parse_indices(self):
        assert parse_indices('3,3,1,3', 4) == (3, 3, 1, 3)
        with pytest.raises(ValueError):
            parse_indices('3,x', 2)
        with pytest.raises(ValueError):
            parse_indices('3', 2)

    @pytest.mark.parametrize(
        'error, expected, category',
        [
            (PrecisionExhausted('undecided'), 'precision-exhausted',
             'exact-arithmetic'),
            (SingularMatrix('No pivot in column 0'), 'engine-failure',
             'braiding'),
            (VircertError('stalled'), 'engine-failure', 'engine'),
            (ValueError('bad'), 'invalid-argument', 'cli'),
            (RuntimeError('boom'), 'internal-error', 'cli'),
        ],
    )
    def test_handle_error(self, error, expected, category):
        # Act
        document = handle_error(error, 'test')

        # Assert
        assert document.error == expected
        assert document.category == category
        assert document.detail == str(error)

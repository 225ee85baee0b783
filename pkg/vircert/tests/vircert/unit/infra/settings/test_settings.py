import pytest
from pydantic import ValidationError

from vircert.infra.settings.settings import Settings


class TestSettings:
    """Tests for environment driven configuration."""

    def test_defaults(self, quiet_environment):
        # Act
        settings = Settings()

        # Assert
        assert settings.MAX_K == 8
        assert settings.MAX_PRECISION_BITS == 4096
        assert settings.CACHE_MODE == 'none'
        assert settings.OUTPUT == 'json'

    def test_environment_prefix(self, quiet_environment, monkeypatch):
        # Arrange
        monkeypatch.setenv('VIRCERT_MAX_K', '3')
        monkeypatch.setenv('VIRCERT_OUTPUT', 'table')

        # Act
        settings = Settings()

        # Assert
        assert settings.MAX_K == 3
        assert settings.OUTPUT == 'table'

    def test_initial_precision_above_ceiling(self, quiet_environment):
        with pytest.raises(ValidationError):
            Settings(INITIAL_PRECISION_BITS=512, MAX_PRECISION_BITS=256)

    def test_sqlite_needs_path(self, quiet_environment):
        """sqlite mode without a path is a configuration error."""
        with pytest.raises(ValidationError):
            Settings(CACHE_MODE='sqlite')

    def test_unknown_output(self, quiet_environment, monkeypatch):
        monkeypatch.setenv('VIRCERT_OUTPUT', 'xml')
        with pytest.raises(ValidationError):
            Settings()

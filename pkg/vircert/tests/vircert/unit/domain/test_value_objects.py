from fractions import Fraction

import pytest

from vircert.domain.exceptions import InvalidLabel
from vircert.domain.value_objects import AffineLabel, KacLabel, ModuleSum


class TestKacLabel:
    """Unit tests for KacLabel."""

    def test_ordering_and_text(self):
        """Labels order by (i', i) and print as (i',i)."""
        assert KacLabel(1, 5) < KacLabel(2, 1)
        assert str(KacLabel(3, 4)) == '(3,4)'
        assert KacLabel(3, 4).as_tuple() == (3, 4)

    def test_non_positive_entries_rejected(self):
        """Entries must be at least 1."""
        with pytest.raises(InvalidLabel):
            KacLabel(0, 1)


class TestAffineLabel:
    """Unit tests for AffineLabel."""

    def test_ground_weight(self):
        """L(m, k) has ground weight k(k+2)/(4(m+2))."""
        assert AffineLabel(3, 3).ground_weight() == Fraction(3, 4)
        assert AffineLabel(1, 0).ground_weight() == 0

    def test_weight_out_of_range(self):
        """0 <= k <= m is enforced with the affine category."""
        # Act
        with pytest.raises(InvalidLabel) as error:
            AffineLabel(2, 3)

        # Assert
        assert error.value.category == 'affine-gko'


class TestModuleSum:
    """Unit tests for formal sums of modules."""

    def test_of_counts_repeats(self):
        """Repeated labels add multiplicities."""
        # Act
        total = ModuleSum.of(3, 1, 3)

        # Assert
        assert total.multiplicity(3) == 2
        assert total.multiplicity(5) == 0
        assert total.labels() == [1, 3]
        assert total.total() == 3

    def test_addition_and_equality(self):
        """Sums add termwise and compare by content."""
        # Act
        total = ModuleSum({1: 1}) + ModuleSum({1: 2, 5: 1})

        # Assert
        assert total == ModuleSum({1: 3, 5: 1})
        assert hash(total) == hash(ModuleSum({5: 1, 1: 3}))
        assert 5 in total
        assert list(total) == [1, 5]
        assert len(total) == 2

    def test_zero_terms_dropped(self):
        """Zero multiplicities are not stored."""
        assert ModuleSum({1: 0}) == ModuleSum()
        assert repr(ModuleSum()) == 'ModuleSum(0)'

    def test_negative_multiplicity_rejected(self):
        with pytest.raises(ValueError):
            ModuleSum({1: -1})

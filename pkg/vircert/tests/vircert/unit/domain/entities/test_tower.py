from fractions import Fraction

import pytest

from vircert.domain.entities.affine import gko_branch
from vircert.domain.entities.tower import (
    STARTING_SUMMANDS,
    build_tower,
    closure_witness,
    coset_fusion,
    coset_modules,
    coset_weights,
    extend_tower,
    fusion_coefficient,
    griess_weight_check,
    is_fusion_closed,
    largest_index,
    longest_summand_index,
)
from vircert.domain.exceptions import (
    BoundExceeded,
    InvalidLabel,
    InvalidModel,
)
from vircert.domain.value_objects import ModuleSum
from vircert.infra.settings.settings import Settings

MAX_K = Settings.model_fields['MAX_K'].default


def fractions(*texts):
    return {Fraction(text) for text in texts}


def terminal_weights(k, index):
    """Last weights of sector ``index`` from a fold over labels only."""
    frontier = {(start.level, start.k, epsilon)
                for start, epsilon in STARTING_SUMMANDS}
    found = set()
    for _ in range(k + 2):
        found, reached = set(), set()
        for level, n, epsilon in frontier:
            for weight, label in gko_branch(level, epsilon, n):
                reached.add((label.level, label.k, 0))
                if label.k == index:
                    found.add(weight)
        frontier = reached
    return found


class TestBuildTower:
    """Unit tests for the iterated GKO tower."""

    def test_k2_sectors(self):
        """Sector weights of the k = 2 tower at affine level 7."""
        # Act
        tower = build_tower(2)

        # Assert
        assert tower.level == 7
        assert tower.terminal_weights(0) == fractions(
            '0', '5/4', '19/4', '21/2'
        )
        assert tower.terminal_weights(2) == fractions(
            '7/9', '1/36', '55/36', '95/18'
        )

    def test_k1_vacuum_sector(self):
        """Sector 0 of k = 1 carries the three coset weights."""
        # Act
        tower = build_tower(1)

        # Assert
        assert tower.terminal_weights(0) == fractions('0', '9/7', '34/7')
        assert tower.terminal_weights(0) == set(coset_weights(1).values())

    @pytest.mark.parametrize('k', range(1, 6))
    def test_vacuum_sector_is_coset_weights(self, k):
        """Sector 0 carries exactly the weights of the coset modules."""
        assert build_tower(k).terminal_weights(0) == set(
            coset_weights(k).values()
        )

    @pytest.mark.parametrize('k', range(1, MAX_K + 1))
    def test_vacuum_sector_up_to_bound(self, k):
        """The label fold reaches the same weights for every allowed k."""
        assert terminal_weights(k, 0) == set(coset_weights(k).values())

    def test_label_fold_matches_tower(self):
        tower = build_tower(3)
        for index in tower.sectors:
            assert terminal_weights(3, index) == tower.terminal_weights(
                index
            )

    @pytest.mark.parametrize('k', range(0, 4))
    def test_odd_sectors_empty(self, k):
        assert build_tower(k).odd_sectors_empty()

    def test_extend_matches_direct_build(self):
        """One extra step from k = 1 reproduces the k = 2 tower."""
        # Act
        extended = extend_tower(build_tower(1))
        direct = build_tower(2)

        # Assert
        assert extended.k == 2
        assert list(extended.sectors) == list(direct.sectors)
        for index in direct.sectors:
            assert len(extended.sector(index)) == len(direct.sector(index))
            assert extended.terminal_weights(
                index
            ) == direct.terminal_weights(index)

    def test_grouped_rows_cover_sector(self):
        """Grouped rows account for every path of a sector."""
        # Arrange
        tower = build_tower(2)

        for index in tower.sectors:
            # Act
            rows = tower.grouped(index)

            # Assert
            assert sum(n for _, _, n in rows) == len(tower.sector(index))
            assert {h for _, h, _ in rows} == tower.terminal_weights(index)
        assert tower.total_paths() == sum(
            len(paths) for paths in tower.sectors.values()
        )

    def test_negative_k(self):
        with pytest.raises(InvalidModel):
            build_tower(-1)

    def test_bound_exceeded(self):
        """k above the configured bound is refused before any work."""
        with pytest.raises(BoundExceeded):
            build_tower(3, max_k=2)


class TestCosetModules:
    """Unit tests for fusion among the (1, i) coset modules."""

    def test_modules_and_weights(self):
        assert coset_modules(1) == [1, 3, 5]
        assert coset_weights(1) == {
            1: 0, 3: Fraction(9, 7), 5: Fraction(34, 7)
        }

    def test_fusion_k1(self):
        """3 x 3 = 1 + 3 + 5 and 5 x 5 = 1 + 3 at p = 7."""
        assert coset_fusion(1, 3, 3) == ModuleSum.of(1, 3, 5)
        assert coset_fusion(1, 5, 5) == ModuleSum.of(1, 3)
        assert fusion_coefficient(2, 3, 3, 3) == 1
        assert fusion_coefficient(2, 1, 3, 5) == 0

    def test_non_module_index(self):
        with pytest.raises(InvalidLabel):
            coset_fusion(1, 2, 3)

    def test_k0_has_no_modules(self):
        with pytest.raises(InvalidModel):
            coset_modules(0)

    def test_largest_and_longest(self):
        """Largest index is the top module; t = 3 for k = 1 and 2."""
        assert largest_index(2) == 7
        assert longest_summand_index(1) == 3
        assert longest_summand_index(2) == 3

    @pytest.mark.parametrize(
        'k, t',
        [(1, 3), (2, 3), (3, 5), (4, 5), (5, 5), (6, 5), (7, 7), (8, 7)],
    )
    def test_longest_summand_position(self, k, t):
        """m = k + 4 = 4K + r gives t = 2K + 3 for r = 3, else 2K + 1."""
        # Arrange
        big_k, r = divmod(k + 4, 4)

        # Act
        index = longest_summand_index(k)

        # Assert
        assert index == t
        assert index == (2 * big_k + 3 if r == 3 else 2 * big_k + 1)

    def test_tied_longest_summand_takes_smaller_index(self):
        """At k = 2 and k = 6 two indices tie; the smaller wins."""
        for k, tied in ((2, (3, 5)), (6, (5, 7))):
            sizes = {i: len(coset_fusion(k, i, i)) for i in tied}
            assert len(set(sizes.values())) == 1
            assert longest_summand_index(k) == tied[0]

    @pytest.mark.parametrize('k', range(1, 7))
    def test_coset_fusion_symmetry(self, k):
        """N_{a,b}^c is symmetric in all three indices."""
        modules = coset_modules(k)
        for a in modules:
            for b in modules:
                for c in modules:
                    n = fusion_coefficient(k, a, b, c)
                    assert n == fusion_coefficient(k, b, a, c)
                    assert n == fusion_coefficient(k, a, c, b)

    def test_closure(self):
        """{1} and the full set are closed; {1, 5} is not at k = 2."""
        assert is_fusion_closed(1, [1])
        assert is_fusion_closed(2, coset_modules(2))
        assert not is_fusion_closed(2, [1, 5])
        assert closure_witness(2, [1, 3]) == (3, 3, 5)


class TestGriessWeights:
    """Unit tests for the weight-two check of the Griess algebra."""

    def test_witnesses_k1(self):
        # Act
        check = griess_weight_check(1)

        # Assert
        assert check.holds
        assert check.witnesses == (Fraction(9, 7), Fraction(5, 7))

    @pytest.mark.parametrize('k', range(1, 51))
    def test_holds(self, k):
        assert griess_weight_check(k).holds

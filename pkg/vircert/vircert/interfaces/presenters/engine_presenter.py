from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from vircert.domain.cyclotomic import Cyclotomic
from vircert.domain.entities.braiding import BraidingMatrix, RKey
from vircert.domain.entities.minimal_model import MinimalModel
from vircert.domain.entities.tower import BranchPath, GriessCheck, Tower
from vircert.domain.intervals import preview
from vircert.domain.value_objects import KacLabel, ModuleSum
from vircert.interfaces.schemas.cyclotomic_schema import (
    CyclotomicSchema,
    NumericValue,
    PreviewSchema,
)
from vircert.interfaces.schemas.document_schema import (
    CanonicalDocument,
    FusionDocument,
    GkoDocument,
    GriessDocument,
    MatrixDocument,
    PathSchema,
    RValueDocument,
    TowerDocument,
    WeightEntry,
    WeightsDocument,
    schema_name,
)


def rational_text(value: Fraction) -> str:
    return str(Fraction(value))


class EnginePresenter:
    """
    Formats engine results as schema documents.
    """

    @staticmethod
    def present_value(
        value: Cyclotomic, digits: Optional[int]
    ) -> NumericValue:
        """
        Exact value plus an optional floating point preview.

        Args:
            value (Cyclotomic): The exact value.
            digits (Optional[int]): Preview digits; None omits the preview.

        Returns:
            NumericValue: The formatted value.
        """
        rendered = None
        if digits:
            re, im = preview(value, digits)
            rendered = PreviewSchema(re=re, im=im)
        return NumericValue(
            exact=CyclotomicSchema.from_value(value), preview=rendered
        )

    @staticmethod
    def present_weights(
        model: MinimalModel, weights: List[Tuple[KacLabel, Fraction]]
    ) -> WeightsDocument:
        return WeightsDocument(
            schema_=schema_name('weights'),
            p=model.p,
            central_charge=rational_text(model.central_charge),
            weights=[
                WeightEntry(label=label.as_tuple(), weight=rational_text(h))
                for label, h in weights
            ],
        )

    @staticmethod
    def present_canonical(
        p: int, label: KacLabel, canonical: KacLabel, weight: Fraction
    ) -> CanonicalDocument:
        return CanonicalDocument(
            schema_=schema_name('canonical'),
            p=p,
            label=label.as_tuple(),
            canonical=canonical.as_tuple(),
            weight=rational_text(weight),
        )

    @staticmethod
    def present_fusion(
        p: int, a: Sequence[int], b: Sequence[int], product: ModuleSum
    ) -> FusionDocument:
        return FusionDocument(
            schema_=schema_name('fusion'),
            p=p,
            a=tuple(a),
            b=tuple(b),
            product=[
                (*label.as_tuple(), multiplicity)
                for label, multiplicity in product.items()
            ],
        )

    @staticmethod
    def present_gko(result) -> GkoDocument:
        return GkoDocument(
            schema_=schema_name('gko'),
            m=result.m,
            epsilon=result.epsilon,
            n=result.n,
            central_charge=rational_text(result.central_charge),
            branch=[
                (weight.numerator, weight.denominator, label.level, label.k)
                for weight, label in result.entries
            ],
            gaps=[rational_text(gap) for gap in result.gaps],
            conserves_ground_weight=result.conserves_ground_weight,
        )

    @staticmethod
    def present_path(path: BranchPath) -> PathSchema:
        terminal = path.current()
        return PathSchema(
            weights=[
                (rational_text(c), rational_text(h)) for c, h in path.weights
            ],
            affine_indices=list(path.affine_indices),
            terminal=(terminal.level, terminal.k),
        )

    @staticmethod
    def present_tower(tower: Tower) -> TowerDocument:
        return TowerDocument(
            schema_=schema_name('tower'),
            k=tower.k,
            level=tower.level,
            total_paths=tower.total_paths(),
            sectors={
                index: [EnginePresenter.present_path(path) for path in paths]
                for index, paths in sorted(tower.sectors.items())
            },
        )

    @staticmethod
    def present_griess(check: GriessCheck) -> GriessDocument:
        return GriessDocument(
            schema_=schema_name('griess'),
            k=check.k,
            holds=check.holds,
            witnesses=tuple(rational_text(w) for w in check.witnesses),
        )

    @staticmethod
    def present_r_value(
        key: RKey, value: Cyclotomic, digits: Optional[int]
    ) -> RValueDocument:
        return RValueDocument(
            schema_=schema_name('r-matrix'),
            p=key.p,
            primed=key.primed,
            key=key.labels(),
            value=EnginePresenter.present_value(value, digits),
        )

    @staticmethod
    def present_matrix(result, digits: Optional[int]) -> MatrixDocument:
        def rows_of(matrix: BraidingMatrix):
            return [
                [EnginePresenter.present_value(v, digits) for v in row]
                for row in matrix.entries
            ]

        q_side = result.q_side
        return MatrixDocument(
            schema_=schema_name('braiding-matrix'),
            k=result.k,
            p=q_side.p,
            externals=q_side.externals,
            rows=list(q_side.rows),
            cols=list(q_side.cols),
            entries=rows_of(q_side),
            inverse_transpose=(
                rows_of(result.p_side) if result.p_side else None
            ),
            inverse_transpose_verified=result.verified,
        )

    @staticmethod
    def present_tower_table(tower: Tower) -> str:
        """Sectors as [j, h]_{k-1} summands, one sector per line."""
        lines = [f'k={tower.k}, affine level {tower.level}']
        for index in tower.sectors:
            summands = ' + '.join(
                f'{n}*[{j}, {h}]' if n > 1 else f'[{j}, {h}]'
                for j, h, n in tower.grouped(index)
            )
            lines.append(f'  sector {index}: {summands}')
        return '\n'.join(lines)

    @staticmethod
    def present_weights_table(
        model: MinimalModel, weights: List[Tuple[KacLabel, Fraction]]
    ) -> str:
        lines = [f'p={model.p}, c={model.central_charge}']
        lines.extend(f'  h{label} = {h}' for label, h in weights)
        return '\n'.join(lines)

from typing import Optional, Sequence, Tuple

from vircert.interfaces.presenters.engine_presenter import EnginePresenter
from vircert.interfaces.schemas.document_schema import (
    CanonicalDocument,
    FusionDocument,
    GkoDocument,
    GriessDocument,
    MatrixDocument,
    RValueDocument,
    TowerDocument,
    WeightsDocument,
)


class EngineController:
    """
    Controller for the Kac table, GKO, tower and braiding operations.
    """

    def __init__(
        self,
        list_weights_use_case,
        canonicalize_label_use_case,
        fuse_modules_use_case,
        branch_gko_use_case,
        build_tower_use_case,
        check_griess_weights_use_case,
        evaluate_r_matrix_use_case,
        build_braiding_matrix_use_case,
        preview_digits: Optional[int] = 12,
    ):
        self.list_weights_use_case = list_weights_use_case
        self.canonicalize_label_use_case = canonicalize_label_use_case
        self.fuse_modules_use_case = fuse_modules_use_case
        self.branch_gko_use_case = branch_gko_use_case
        self.build_tower_use_case = build_tower_use_case
        self.check_griess_weights_use_case = check_griess_weights_use_case
        self.evaluate_r_matrix_use_case = evaluate_r_matrix_use_case
        self.build_braiding_matrix_use_case = build_braiding_matrix_use_case
        self.preview_digits = preview_digits

    def weights(self, p: int) -> WeightsDocument:
        model, weights = self.list_weights_use_case.execute(p)
        return EnginePresenter.present_weights(model, weights)

    def weights_table(self, p: int) -> str:
        model, weights = self.list_weights_use_case.execute(p)
        return EnginePresenter.present_weights_table(model, weights)

    def canonical(self, p: int, label: Tuple[int, int]) -> CanonicalDocument:
        validated, canonical, weight = (
            self.canonicalize_label_use_case.execute(p, label)
        )
        return EnginePresenter.present_canonical(
            p, validated, canonical, weight
        )

    def fuse(
        self, p: int, a: Tuple[int, int], b: Tuple[int, int]
    ) -> FusionDocument:
        product = self.fuse_modules_use_case.execute(p, a, b)
        return EnginePresenter.present_fusion(p, a, b, product)

    def gko(self, m: int, epsilon: int, n: int) -> GkoDocument:
        result = self.branch_gko_use_case.execute(m, epsilon, n)
        return EnginePresenter.present_gko(result)

    def tower(self, k: int) -> TowerDocument:
        return EnginePresenter.present_tower(
            self.build_tower_use_case.execute(k)
        )

    def tower_table(self, k: int) -> str:
        return EnginePresenter.present_tower_table(
            self.build_tower_use_case.execute(k)
        )

    def griess(self, k: int) -> GriessDocument:
        return EnginePresenter.present_griess(
            self.check_griess_weights_use_case.execute(k)
        )

    def r_value(
        self, p: int, key_text: str, primed: bool = False
    ) -> RValueDocument:
        key, value = self.evaluate_r_matrix_use_case.execute(
            p, key_text, primed
        )
        return EnginePresenter.present_r_value(key, value, self.preview_digits)

    def braiding_matrix(
        self, k: int, externals: Sequence[int]
    ) -> MatrixDocument:
        result = self.build_braiding_matrix_use_case.execute(k, externals)
        return EnginePresenter.present_matrix(result, self.preview_digits)

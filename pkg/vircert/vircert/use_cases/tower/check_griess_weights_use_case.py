from vircert.domain.entities.tower import GriessCheck, griess_weight_check


class CheckGriessWeightsUseCase:
    def execute(self, k: int) -> GriessCheck:
        return griess_weight_check(k)

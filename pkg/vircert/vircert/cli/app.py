import json
import logging
import re
import sys
from pathlib import Path
from typing import Callable, Optional, Tuple

import typer
from pydantic import BaseModel, ValidationError

from vircert.domain.entities.certificate import Verdict
from vircert.domain.exceptions import PrecisionExhausted, VircertError
from vircert.infra.factories.r_matrix_cache_factory import RMatrixCacheFactory
from vircert.infra.settings.settings import Settings
from vircert.interfaces.controllers.certificate_controller import (
    CertificateController,
)
from vircert.interfaces.controllers.engine_controller import EngineController
from vircert.interfaces.schemas.document_schema import (
    ErrorDocument,
    schema_name,
)
from vircert.use_cases.braiding.build_braiding_matrix_use_case import (
    BuildBraidingMatrixUseCase,
)
from vircert.use_cases.braiding.evaluate_r_matrix_use_case import (
    EvaluateRMatrixUseCase,
)
from vircert.use_cases.certificates.certify_use_case import CertifyUseCase
from vircert.use_cases.gko.branch_gko_use_case import BranchGkoUseCase
from vircert.use_cases.kac.canonicalize_label_use_case import (
    CanonicalizeLabelUseCase,
)
from vircert.use_cases.kac.fuse_modules_use_case import FuseModulesUseCase
from vircert.use_cases.kac.list_weights_use_case import ListWeightsUseCase
from vircert.use_cases.tower.build_tower_use_case import BuildTowerUseCase
from vircert.use_cases.tower.check_griess_weights_use_case import (
    CheckGriessWeightsUseCase,
)

logger = logging.getLogger('vircert')
handler = logging.StreamHandler()
handler.setFormatter(
    logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
)
logger.addHandler(handler)
logger.setLevel(logging.INFO)

EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

PRECISION_PATTERN = re.compile(r'precision|undecided', re.IGNORECASE)
BAD_ARGUMENT_PATTERN = re.compile(
    r'invalid|required|must be|out of range|expected', re.IGNORECASE
)

app = typer.Typer(no_args_is_help=True, add_completion=False)
kac_app = typer.Typer(no_args_is_help=True)
tower_app = typer.Typer(no_args_is_help=True)
braid_app = typer.Typer(no_args_is_help=True)
app.add_typer(kac_app, name='kac', help='Kac table of a minimal model.')
app.add_typer(tower_app, name='tower', help='Coset tower construction.')
app.add_typer(braid_app, name='braid', help='r-matrices and braiding.')

state = {'output': None}


def handle_error(e: Exception, request_info: str = '') -> ErrorDocument:
    """
    Classifies an exception into a structured error document.

    Args:
        e: The original exception.
        request_info: Command description for the log.

    Returns:
        ErrorDocument carrying the originating module's category.
    """
    error_message = str(e)
    logger.error(f'Error processing {request_info}: {error_message}')
    category = getattr(e, 'category', 'cli')

    if isinstance(e, ValidationError):
        error = 'invalid-configuration'
        category = 'cli'
    elif isinstance(e, PrecisionExhausted) or (
        PRECISION_PATTERN.search(error_message)
        and isinstance(e, VircertError)
    ):
        error = 'precision-exhausted'
    elif BAD_ARGUMENT_PATTERN.search(error_message) or isinstance(
        e, ValueError
    ):
        error = 'invalid-argument'
    elif isinstance(e, VircertError):
        error = 'engine-failure'
    else:
        logger.error(
            f'Unhandled exception: {type(e).__name__}: {error_message}'
        )
        error = 'internal-error'
    return ErrorDocument(
        schema_=schema_name('error'),
        error=error,
        category=category,
        detail=error_message,
    )


def render(document: BaseModel) -> str:
    return json.dumps(
        document.model_dump(mode='json', by_alias=True),
        sort_keys=True,
        indent=2,
    )


def get_settings() -> Settings:
    settings = Settings()
    handler.setStream(sys.stderr)
    logger.setLevel(settings.LOG_LEVEL.upper())
    return settings


def output_mode(settings: Settings) -> str:
    return state['output'] or settings.OUTPUT


def get_engine_controller(settings: Settings) -> EngineController:
    """
    Wires the engine use cases with the configured cache.
    """
    cache_repository = RMatrixCacheFactory.create(
        cache_mode=settings.CACHE_MODE, cache_path=settings.CACHE_PATH
    )
    return EngineController(
        list_weights_use_case=ListWeightsUseCase(),
        canonicalize_label_use_case=CanonicalizeLabelUseCase(),
        fuse_modules_use_case=FuseModulesUseCase(),
        branch_gko_use_case=BranchGkoUseCase(),
        build_tower_use_case=BuildTowerUseCase(settings.MAX_K),
        check_griess_weights_use_case=CheckGriessWeightsUseCase(),
        evaluate_r_matrix_use_case=EvaluateRMatrixUseCase(
            cache_repository, settings.CACHE_VERIFY_EVERY
        ),
        build_braiding_matrix_use_case=BuildBraidingMatrixUseCase(
            cache_repository, settings.CACHE_VERIFY_EVERY
        ),
        preview_digits=settings.PREVIEW_DIGITS,
    )


def get_certificate_controller(settings: Settings) -> CertificateController:
    cache_repository = RMatrixCacheFactory.create(
        cache_mode=settings.CACHE_MODE, cache_path=settings.CACHE_PATH
    )
    return CertificateController(
        CertifyUseCase(
            max_k=settings.MAX_K,
            initial_precision=settings.INITIAL_PRECISION_BITS,
            max_precision=settings.MAX_PRECISION_BITS,
            preview_digits=settings.PREVIEW_DIGITS,
            cache_repository=cache_repository,
            verify_every=settings.CACHE_VERIFY_EVERY,
        )
    )


def parse_indices(text: str, count: int) -> Tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(','))
    except ValueError:
        raise ValueError(f'Invalid index list {text!r}: expected integers')
    if len(values) != count:
        raise ValueError(
            f'Invalid index list {text!r}: expected {count} integers'
        )
    return values


def run(
    request_info: str,
    action: Callable[[Settings], BaseModel],
    table: Optional[Callable[[Settings], str]] = None,
) -> None:
    try:
        settings = get_settings()
        if table is not None and output_mode(settings) == 'table':
            typer.echo(table(settings))
        else:
            typer.echo(render(action(settings)))
    except Exception as e:
        typer.echo(render(handle_error(e, request_info)))
        raise typer.Exit(code=EXIT_ERROR)


@app.callback()
def main(
    output: Optional[str] = typer.Option(
        None, '--output', help='json or table; overrides VIRCERT_OUTPUT.'
    ),
):
    """Exact computations on unitary minimal models and coset towers."""
    state['output'] = output


@kac_app.command('weights')
def kac_weights(p: int = typer.Option(..., '--p')):
    """Highest weights of every module of the c_p minimal model."""
    run(
        f'kac weights --p {p}',
        lambda s: get_engine_controller(s).weights(p),
        lambda s: get_engine_controller(s).weights_table(p),
    )


@kac_app.command('canonical')
def kac_canonical(
    p: int = typer.Option(..., '--p'),
    label: str = typer.Option(..., '--label', help="i',i"),
):
    run(
        f'kac canonical --p {p} --label {label}',
        lambda s: get_engine_controller(s).canonical(
            p, parse_indices(label, 2)
        ),
    )


@app.command('fuse')
def fuse(
    p: int = typer.Option(..., '--p'),
    a: str = typer.Option(..., '--a', help="i',i"),
    b: str = typer.Option(..., '--b', help="j',j"),
):
    """Fusion product of two modules."""
    run(
        f'fuse --p {p} --a {a} --b {b}',
        lambda s: get_engine_controller(s).fuse(
            p, parse_indices(a, 2), parse_indices(b, 2)
        ),
    )


@app.command('gko')
def gko(
    m: int = typer.Option(..., '--m'),
    epsilon: int = typer.Option(..., '--epsilon'),
    n: int = typer.Option(..., '--n'),
):
    """Decompose L(1, epsilon) x L(m, n)."""
    run(
        f'gko --m {m} --epsilon {epsilon} --n {n}',
        lambda s: get_engine_controller(s).gko(m, epsilon, n),
    )


@tower_app.command('build')
def tower_build(k: int = typer.Option(..., '--k')):
    """Terminal sectors of the tower for k."""
    run(
        f'tower build --k {k}',
        lambda s: get_engine_controller(s).tower(k),
        lambda s: get_engine_controller(s).tower_table(k),
    )


@tower_app.command('griess')
def tower_griess(k: int = typer.Option(..., '--k')):
    run(
        f'tower griess --k {k}',
        lambda s: get_engine_controller(s).griess(k),
    )


@braid_app.command('r')
def braid_r(
    p: int = typer.Option(..., '--p'),
    key: str = typer.Option(..., '--key', help='a,m,n,c,b,d'),
    primed: bool = typer.Option(False, '--primed'),
):
    """One r-matrix entry r(a,m,n,c)_{b,d}."""
    run(
        f'braid r --p {p} --key {key}',
        lambda s: get_engine_controller(s).r_value(p, key, primed),
    )


@braid_app.command('matrix')
def braid_matrix(
    k: int = typer.Option(..., '--k'),
    ext: str = typer.Option(..., '--ext', help='a4,a3,a2,a1'),
):
    """Braiding matrix for four coset indices and its inverse transpose."""
    run(
        f'braid matrix --k {k} --ext {ext}',
        lambda s: get_engine_controller(s).braiding_matrix(
            k, parse_indices(ext, 4)
        ),
    )


@app.command('certify')
def certify(
    k: int = typer.Option(..., '--k'),
    max_precision: Optional[int] = typer.Option(
        None, '--max-precision', help='Bits for certified signs.'
    ),
    json_path: Optional[Path] = typer.Option(
        None, '--json', help='Also write the certificate document here.'
    ),
):
    """Uniqueness certificate for k; exit code 2 when inconclusive."""
    request_info = f'certify --k {k}'
    try:
        settings = get_settings()
        controller = get_certificate_controller(settings)
        certificate = controller.certify(k, max_precision=max_precision)
        document = render(controller.document(certificate))
        if json_path is not None:
            json_path.write_text(document + '\n', encoding='utf-8')
        if output_mode(settings) == 'table':
            typer.echo(controller.table(certificate))
        else:
            typer.echo(document)
    except Exception as e:
        typer.echo(render(handle_error(e, request_info)))
        raise typer.Exit(code=EXIT_ERROR)
    if certificate.verdict != Verdict.UNIQUE:
        raise typer.Exit(code=EXIT_INCONCLUSIVE)


if __name__ == '__main__':
    app()

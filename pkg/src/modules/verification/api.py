from argparse import Namespace

from core.methods.router import CommandRouter, argument
from core.schemes.body import Discriminant
from general.arguments import emit, out_argument, start_manifest
from modules.verification.methods import run_suite

router = CommandRouter()


@router.command(
    'verify',
    help='проверка аналитических тождеств на случайных нечётных полях',
    arguments=(
        argument('--seed', type=int, default=0, help='seed случайных коэффициентов'),
        argument(
            '--inject-remark-discriminant', action='store_true',
            help='заменить дискриминант на α² − β (проверка чувствительности набора)'
        ),
        out_argument
    )
)
def verify_identities(arguments: Namespace) -> int:
    recorder = start_manifest(arguments)
    recorder.manifest.seeds = [arguments.seed]

    discriminant = Discriminant.REMARK if arguments.inject_remark_discriminant else Discriminant.EXACT
    report = run_suite(arguments.seed, discriminant)

    emit(arguments.out, recorder, report)
    return 0 if report.passed else 1

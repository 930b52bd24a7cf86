from argparse import Namespace

from core.exceptions import InputValidationException
from core.methods.router import CommandRouter, argument
from general.arguments import (
    FLOOR, coeffs_argument, emit, grid_arguments, load_coefficients, out_argument, resolve_grid, start_manifest,
    width_value
)
from modules.functionals.methods import evaluate
from modules.optimizer.methods import verify_necessary_conditions
from modules.width_floor.methods import w_floor

router = CommandRouter()


@router.command(
    'eval',
    help='функционалы, порог ширины и необходимые условия для тела h + w',
    arguments=(
        coeffs_argument,
        argument('--w', type=width_value, default=FLOOR, help='параметр w или "floor" для w0(h)'),
        argument('--refine-levels', type=int, default=2, help='уровни уточнения w0'),
        *grid_arguments,
        out_argument
    )
)
def evaluate_body(arguments: Namespace):
    recorder = start_manifest(arguments)
    coeffs = load_coefficients(arguments.coeffs, recorder)
    grid = resolve_grid(arguments, coeffs.lmax)
    recorder.manifest.grid = (grid.n_theta, grid.n_phi)

    floor = w_floor(coeffs, grid, arguments.refine_levels)
    w = floor.w0 if arguments.w == FLOOR else arguments.w

    if w <= 0:
        raise InputValidationException(f'Параметр ширины должен быть положительным: w={w}')

    emit(arguments.out, recorder, {
        'functionals': evaluate(coeffs, w, grid).model_dump(mode='json'),
        'width_floor': floor.model_dump(mode='json'),
        'verification': verify_necessary_conditions(coeffs, w, grid).model_dump(mode='json')
    })

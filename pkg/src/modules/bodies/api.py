from argparse import Namespace

from core.methods.router import CommandRouter, argument
from core.schemes.body import ReferenceBody
from general.arguments import emit, out_argument, start_manifest
from modules.bodies.methods import ball, monte_carlo_volume, profile_to_coeffs, reuleaux_volume_quad, rotated_reuleaux
from modules.functionals.methods import evaluate
from modules.harmonics.schemes import CoefficientsFile
from modules.sphere_grid.methods import default_grid
from modules.width_floor.methods import w_floor

router = CommandRouter()


@router.command(
    'reference',
    help='коэффициенты эталонного тела и его функционалы',
    arguments=(
        argument('--name', type=ReferenceBody, choices=list(ReferenceBody), required=True, help='эталонное тело'),
        argument('--lmax', type=int, default=13, help='степень проекции профиля'),
        argument('--width', type=float, default=2.0, help='постоянная ширина тела'),
        argument('--monte-carlo', type=int, default=0, help='число точек оценки объёма методом Монте-Карло'),
        argument('--seed', type=int, default=0, help='seed оценки Монте-Карло'),
        out_argument
    )
)
def reference_body(arguments: Namespace):
    recorder = start_manifest(arguments)
    w = arguments.width / 2

    if arguments.name == ReferenceBody.BALL:
        coeffs = ball(arguments.lmax)
    else:
        coeffs = profile_to_coeffs(rotated_reuleaux(arguments.width), arguments.lmax)

    grid = default_grid(coeffs.lmax)
    recorder.manifest.grid = (grid.n_theta, grid.n_phi)

    document = {
        **CoefficientsFile.from_coeffs(coeffs).model_dump(mode='json'),
        'name': arguments.name,
        'width': arguments.width,
        'w0': w_floor(coeffs, grid).w0,
        'functionals': evaluate(coeffs, w, grid).model_dump(mode='json')
    }

    if arguments.name == ReferenceBody.ROTATED_REULEAUX:
        document['volume_quad'] = reuleaux_volume_quad(arguments.width)

        if arguments.monte_carlo > 0:
            recorder.manifest.seeds = [arguments.seed]
            estimate, error = monte_carlo_volume(arguments.width, arguments.monte_carlo, arguments.seed)
            document['monte_carlo'] = {'volume': estimate, 'standard_error': error, 'samples': arguments.monte_carlo}

    emit(arguments.out, recorder, document)

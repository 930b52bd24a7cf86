from argparse import Namespace
from pathlib import Path

import numpy as np

from core.exceptions import InputValidationException
from core.methods.router import CommandRouter, argument
from core.models.body import WidthBody
from general.arguments import FLOOR, coeffs_argument, emit, load_coefficients, start_manifest, width_value
from modules.functionals.methods import volume
from modules.mesh.methods import mesh_volume, mesh_width_deviation, tessellate, write_obj
from modules.sphere_grid.methods import default_grid
from modules.width_floor.methods import w_floor

router = CommandRouter()


@router.command(
    'export',
    help='треугольная сетка поверхности тела в формате OBJ',
    arguments=(
        coeffs_argument,
        argument('--w', type=width_value, default=FLOOR, help='параметр w или "floor" для w0(h)'),
        argument('--grid-theta', type=int, default=64, help='число строк сетки отображения'),
        argument('--grid-phi', type=int, default=128, help='число столбцов сетки отображения'),
        argument('--out', type=Path, required=True, help='OBJ-файл; отчёт пишется рядом с суффиксом .report.json')
    )
)
def export_mesh(arguments: Namespace):
    recorder = start_manifest(arguments)
    coeffs = load_coefficients(arguments.coeffs, recorder)
    recorder.manifest.grid = (arguments.grid_theta, arguments.grid_phi)

    w0 = w_floor(coeffs, default_grid(coeffs.lmax)).w0
    body = WidthBody(coeffs=coeffs, w=w0 if arguments.w == FLOOR else arguments.w, w0=w0)

    if body.w <= 0:
        raise InputValidationException(f'Параметр ширины должен быть положительным: w={body.w}')

    vertices, faces = tessellate(body, arguments.grid_theta, arguments.grid_phi)
    write_obj(arguments.out, vertices, faces)
    recorder.output(arguments.out, arguments.out.read_bytes())

    directions = default_grid(max(coeffs.lmax, 15)).u

    emit(arguments.out.with_suffix('.report.json'), recorder, {
        'w': body.w,
        'w0': w0,
        'vertices': int(vertices.shape[0]),
        'faces': int(faces.shape[0]),
        'mesh_volume': mesh_volume(vertices, faces),
        'volume': volume(coeffs, body.w),
        'width_deviation': mesh_width_deviation(vertices, directions, body.w),
        'max_vertex_norm': float(np.max(np.linalg.norm(vertices, axis=1)))
    })

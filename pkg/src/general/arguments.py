import sys
from argparse import Namespace
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from core.exceptions import UsageException
from core.methods.reports import ManifestRecorder, dumps, read_model
from core.methods.router import argument
from core.models.coeffs import OddHarmonicCoeffs
from core.models.grid import SphereGrid
from modules.harmonics.schemes import CoefficientsFile
from modules.sphere_grid.methods import build_grid, default_grid

FLOOR = 'floor'

grid_arguments = (
    argument('--grid-theta', type=int, default=None, help='число узлов Гаусса–Лежандра по θ'),
    argument('--grid-phi', type=int, default=None, help='число равномерных узлов по φ')
)

coeffs_argument = argument('--coeffs', type=Path, required=True, help='JSON-файл коэффициентов')
out_argument = argument('--out', type=Path, default=None, help='путь отчёта; по умолчанию stdout')


def width_value(value: str) -> float | str:
    if value == FLOOR:
        return FLOOR

    try:
        return float(value)
    except ValueError:
        raise UsageException(f'--w ожидает число или "{FLOOR}": {value}')


def resolve_grid(arguments: Namespace, lmax: int) -> SphereGrid:
    if (arguments.grid_theta is None) != (arguments.grid_phi is None):
        raise UsageException('--grid-theta и --grid-phi задаются вместе')

    if arguments.grid_theta is None:
        return default_grid(lmax)

    return build_grid(arguments.grid_theta, arguments.grid_phi)


def load_coefficients(path: Path, recorder: ManifestRecorder) -> OddHarmonicCoeffs:
    coeffs = read_model(path, CoefficientsFile).to_coeffs()
    recorder.input(path)

    return coeffs


def emit(path: Path | None, recorder: ManifestRecorder, document: BaseModel | dict[str, Any]):
    """Writes the report with its manifest to `path`, or to stdout."""

    if isinstance(document, BaseModel):
        document = document.model_dump(mode='json')

    content = dumps({**document, 'manifest': recorder.finish().model_dump(mode='json')})

    if path is None:
        sys.stdout.buffer.write(content)
        sys.stdout.buffer.flush()
    else:
        path.write_bytes(content)


def start_manifest(arguments: Namespace) -> ManifestRecorder:
    options = {key: value for key, value in vars(arguments).items() if key not in ('command', 'handler')}
    return ManifestRecorder(arguments.command, options)

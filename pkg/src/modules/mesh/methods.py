from pathlib import Path

import numpy as np

from core.exceptions import BelowFloorException
from core.models.body import WidthBody
from modules.geometry.methods import embed
from modules.harmonics.methods import jet_at
from modules.sphere_grid.methods import build_grid

POLE_OFFSET = 1e-5
POLE_SAMPLES = 8
FLOOR_TOLERANCE = 1e-9


def _pole_point(body: WidthBody, theta: float) -> np.ndarray:
    """f at a pole as the ring average of f at distance POLE_OFFSET, exact up to O(POLE_OFFSET²)."""

    phi = 2 * np.pi * np.arange(POLE_SAMPLES) / POLE_SAMPLES
    jet = jet_at(body.coeffs, np.full(POLE_SAMPLES, theta), phi)

    return embed(jet, body.w).mean(axis=0)


def tessellate(body: WidthBody, n_theta: int, n_phi: int) -> tuple[np.ndarray, np.ndarray]:
    """Closed triangle mesh of f(𝕊²): latitude rows of a display grid plus the two poles, faces oriented outward."""

    if body.w < body.w0 * (1 - FLOOR_TOLERANCE):
        raise BelowFloorException(f'w={body.w} ниже порога выпуклости w0={body.w0}: сетка самопересекается')

    grid = build_grid(n_theta, n_phi)
    # grid rows run from the south pole upwards; the mesh lists them north to south
    order = np.arange(grid.size).reshape(n_theta, n_phi)[::-1].ravel()
    rows = embed(jet_at(body.coeffs, grid.theta[order], grid.phi[order]), body.w)

    vertices = np.vstack((_pole_point(body, POLE_OFFSET), rows, _pole_point(body, np.pi - POLE_OFFSET)))
    south = vertices.shape[0] - 1

    def index(row: int, column: int) -> int:
        return 1 + row * n_phi + column % n_phi

    faces = []

    for column in range(n_phi):
        faces.append((0, index(0, column), index(0, column + 1)))
        faces.append((south, index(n_theta - 1, column + 1), index(n_theta - 1, column)))

    for row in range(n_theta - 1):
        for column in range(n_phi):
            a, b = index(row, column), index(row, column + 1)
            c, d = index(row + 1, column + 1), index(row + 1, column)

            faces.append((a, d, c))
            faces.append((a, c, b))

    return vertices, np.array(faces)


def mesh_volume(vertices: np.ndarray, faces: np.ndarray) -> float:
    v0, v1, v2 = (vertices[faces[:, position]] for position in range(3))
    return float(np.sum(np.einsum('ij,ij->i', v0, np.cross(v1, v2))) / 6)


def mesh_width_deviation(vertices: np.ndarray, directions: np.ndarray, w: float, chunk: int = 512) -> float:
    """Largest |s(u) + s(−u) − 2w| over the given directions, with s the support function of the vertex set."""

    deviation = 0.0

    for start in range(0, directions.shape[0], chunk):
        projection = directions[start:start + chunk] @ vertices.T
        width = projection.max(axis=1) - projection.min(axis=1)
        deviation = max(deviation, float(np.max(np.abs(width - 2 * w))))

    return deviation


def write_obj(path: Path, vertices: np.ndarray, faces: np.ndarray):
    with open(path, 'w', encoding='utf-8') as file:
        file.write(f'# widthforge mesh: {vertices.shape[0]} vertices, {faces.shape[0]} faces\n')

        for x, y, z in vertices:
            file.write(f'v {x:.17g} {y:.17g} {z:.17g}\n')

        for a, b, c in faces + 1:
            file.write(f'f {a} {b} {c}\n')

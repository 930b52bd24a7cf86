from functools import lru_cache

import numpy as np
from loguru import logger
from scipy.special import roots_legendre

from core.exceptions import GridException
from core.models.grid import SphereGrid


@lru_cache(maxsize=32)
def build_grid(n_theta: int, n_phi: int) -> SphereGrid:
    if n_theta < 1:
        raise GridException(f'n_theta должен быть положительным: {n_theta}')

    if n_phi < 2 or n_phi % 2 != 0:
        raise GridException(f'n_phi должен быть чётным и не меньше 2: {n_phi}')

    x, x_weights = roots_legendre(n_theta)

    # exact mirror symmetry in cos θ, so that (θ, φ) ↦ (π − θ, φ + π) is a node permutation
    x = (x - x[::-1]) / 2
    x_weights = (x_weights + x_weights[::-1]) / 2

    sin_theta = np.sqrt(1 - x ** 2)
    theta = np.arccos(x)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi

    rows, columns = np.divmod(np.arange(n_theta * n_phi), n_phi)

    u = np.stack(
        (
            sin_theta[rows] * np.cos(phi[columns]),
            sin_theta[rows] * np.sin(phi[columns]),
            x[rows]
        ),
        axis=1
    )

    antipode_index = (n_theta - 1 - rows) * n_phi + (columns + n_phi // 2) % n_phi

    grid = SphereGrid(
        n_theta=n_theta,
        n_phi=n_phi,
        theta=theta[rows],
        phi=phi[columns],
        u=u,
        weights=x_weights[rows] * (2 * np.pi / n_phi),
        antipode_index=antipode_index,
        band_limit=min(2 * n_theta - 1, n_phi - 1)
    )

    logger.debug(f'Построена сетка {n_theta}x{n_phi}, точность до степени {grid.band_limit}')

    return grid


def default_grid(lmax: int, oversampling: int = 1) -> SphereGrid:
    return build_grid(oversampling * (2 * lmax + 2), oversampling * (4 * lmax + 4))


def integrate(grid: SphereGrid, field: np.ndarray) -> float:
    field = np.asarray(field, dtype=float)

    if field.shape != (grid.size,):
        raise GridException(f'Длина поля {field.shape} не совпадает с числом узлов {grid.size}')

    half = grid.half
    return float(np.sum(grid.weights[half] * (field[half] + field[grid.antipode_index[half]])))


def antipode(grid: SphereGrid, index: int) -> int:
    if not 0 <= index < grid.size:
        raise GridException(f'Индекс узла вне диапазона: {index}')

    return int(grid.antipode_index[index])

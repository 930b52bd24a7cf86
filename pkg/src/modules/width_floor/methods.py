import numpy as np
from loguru import logger
from scipy.optimize import bisect, minimize

from core.exceptions import InputValidationException
from core.models.body import WidthBody
from core.models.coeffs import OddHarmonicCoeffs
from core.models.grid import SphereGrid
from core.models.jet import SupportJet
from core.schemes.body import Discriminant
from modules.geometry.methods import alpha_beta, area_element
from modules.harmonics.methods import jet_at, synth_jet
from modules.width_floor.schemes import RefinementStep, WidthFloorResult

SEED_COUNT = 5
POLE_MARGIN = 1e-4
ARGMAX_TOLERANCE = 1e-9


def w_field(jet: SupportJet, discriminant: Discriminant = Discriminant.EXACT) -> np.ndarray:
    """Largest root of w² + αw + β per node, clamped at 0; 0 where the quadratic has no real root."""

    alpha, beta = alpha_beta(jet)

    if discriminant == Discriminant.EXACT:
        delta = alpha ** 2 - 4 * beta
    else:
        delta = alpha ** 2 - beta

    root = (-alpha + np.sqrt(np.clip(delta, 0.0, None))) / 2
    return np.where(delta >= 0, np.maximum(root, 0.0), 0.0)


def _point_value(coeffs: OddHarmonicCoeffs, point: np.ndarray, discriminant: Discriminant) -> float:
    return float(w_field(jet_at(coeffs, point[0], point[1] % (2 * np.pi)), discriminant)[0])


def _refine_point(
    coeffs: OddHarmonicCoeffs,
    start: np.ndarray,
    radius: tuple[float, float],
    discriminant: Discriminant
) -> tuple[np.ndarray, float]:
    bounds = (
        (max(start[0] - radius[0], POLE_MARGIN), min(start[0] + radius[0], np.pi - POLE_MARGIN)),
        (start[1] - radius[1], start[1] + radius[1])
    )

    result = minimize(
        lambda point: -_point_value(coeffs, point, discriminant),
        start,
        method='Nelder-Mead',
        bounds=bounds,
        options={'xatol': 1e-12, 'fatol': 1e-16, 'maxiter': 400}
    )

    start_value = _point_value(coeffs, start, discriminant)

    if -result.fun > start_value:
        return result.x, float(-result.fun)

    return start, start_value


def w_floor(
    coeffs: OddHarmonicCoeffs,
    grid: SphereGrid,
    refine_levels: int = 2,
    discriminant: Discriminant = Discriminant.EXACT
) -> WidthFloorResult:
    if refine_levels < 0:
        raise InputValidationException(f'Число уровней уточнения не может быть отрицательным: {refine_levels}')

    jet = synth_jet(coeffs, grid)
    field = w_field(jet, discriminant)
    w0_grid = float(np.max(field))

    argmax_nodes = np.flatnonzero(field >= w0_grid - ARGMAX_TOLERANCE * w0_grid).tolist() if w0_grid > 0 else []
    record = [RefinementStep(level=0, w0=w0_grid, radius_theta=0.0, radius_phi=0.0)]

    if w0_grid <= 0 or refine_levels == 0:
        density = area_element(jet, w0_grid)

        return WidthFloorResult(
            w0=w0_grid,
            w0_grid=w0_grid,
            argmax_nodes=argmax_nodes,
            argmax_points=[(float(grid.theta[index]), float(grid.phi[index])) for index in argmax_nodes],
            argmax_densities=[float(density[index]) for index in argmax_nodes],
            refinement_record=record,
            W_field=field
        )

    seeds = np.argsort(-field, kind='stable')[:SEED_COUNT]
    points = [np.array([grid.theta[index], grid.phi[index]]) for index in seeds]
    values = [float(field[index]) for index in seeds]
    cell_theta, cell_phi = grid.cell

    for level in range(1, refine_levels + 1):
        radius = (cell_theta / 2 ** (level - 1), cell_phi / 2 ** (level - 1))

        for position, point in enumerate(points):
            points[position], values[position] = _refine_point(coeffs, point, radius, discriminant)

        record.append(
            RefinementStep(level=level, w0=max(max(values), w0_grid), radius_theta=radius[0], radius_phi=radius[1])
        )

        logger.debug(f'Уточнение w0, уровень {level}: {record[-1].w0:.17g}')

    w0 = max(max(values), w0_grid)
    best = [position for position, value in enumerate(values) if value >= w0 - ARGMAX_TOLERANCE * w0]

    theta = np.array([points[position][0] for position in best])
    phi = np.array([points[position][1] % (2 * np.pi) for position in best])

    return WidthFloorResult(
        w0=w0,
        w0_grid=w0_grid,
        argmax_nodes=argmax_nodes,
        argmax_points=[(float(t), float(p)) for t, p in zip(theta, phi)],
        argmax_densities=area_element(jet_at(coeffs, theta, phi), w0).tolist(),
        refinement_record=record,
        W_field=field
    )


def bisection_floor(coeffs: OddHarmonicCoeffs, grid: SphereGrid) -> float:
    """Smallest w beyond which every node keeps a positive area element, found by bisection."""

    alpha, beta = alpha_beta(synth_jet(coeffs, grid))
    vertex = -alpha / 2

    def lowest_density(w: float) -> float:
        return float(np.min(np.where(w >= vertex, w ** 2 + alpha * w + beta, beta - alpha ** 2 / 4)))

    if lowest_density(0.0) >= 0:
        return 0.0

    upper = 1.0

    while lowest_density(upper) < 0:
        upper *= 2

    return float(bisect(lowest_density, 0.0, upper, xtol=1e-15 * upper, maxiter=500))


def singular_set(coeffs: OddHarmonicCoeffs, w: float, tol: float, grid: SphereGrid) -> list[int]:
    density = area_element(synth_jet(coeffs, grid), w)
    return np.flatnonzero(density <= tol * w ** 2).tolist()


def at_floor(coeffs: OddHarmonicCoeffs, grid: SphereGrid, refine_levels: int = 2) -> WidthBody:
    w0 = w_floor(coeffs, grid, refine_levels).w0
    return WidthBody(coeffs=coeffs, w=w0, w0=w0)

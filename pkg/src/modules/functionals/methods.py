import numpy as np

from core.exceptions import InputValidationException
from core.models.coeffs import OddHarmonicCoeffs
from core.models.grid import SphereGrid
from core.models.jet import SupportJet
from modules.functionals.schemes import FunctionalReport
from modules.geometry.methods import area_element
from modules.harmonics.methods import synth_jet
from modules.sphere_grid.methods import integrate

BELOW_FLOOR_TOLERANCE = 1e-8


def energy(coeffs: OddHarmonicCoeffs) -> float:
    degrees = coeffs.degrees
    return float(np.sum((degrees * (degrees + 1) / 2 - 1) * coeffs.values ** 2))


def energy_quadrature(jet: SupportJet, grid: SphereGrid) -> float:
    return integrate(grid, jet.grad_norm2 / 2 - jet.h ** 2)


def volume(coeffs: OddHarmonicCoeffs, w: float) -> float:
    return 4 * np.pi / 3 * w ** 3 - w * energy(coeffs)


def area(coeffs: OddHarmonicCoeffs, w: float) -> float:
    return 4 * np.pi * w ** 2 - energy(coeffs)


def ratio_I(coeffs: OddHarmonicCoeffs, w: float) -> float:
    if w <= 0:
        raise InputValidationException(f'Параметр ширины должен быть положительным: {w}')

    return 1 - energy(coeffs) / (4 * np.pi * w ** 2 / 3)


def volume_direct(jet: SupportJet, w: float, grid: SphereGrid) -> float:
    return integrate(grid, (jet.h + w) * area_element(jet, w)) / 3


def area_direct(jet: SupportJet, w: float, grid: SphereGrid) -> float:
    return integrate(grid, area_element(jet, w))


def lemmaH_residual(jet: SupportJet, grid: SphereGrid) -> float:
    return abs(integrate(grid, jet.dethess) - integrate(grid, jet.grad_norm2) / 2)


def cubic_residual(jet: SupportJet, grid: SphereGrid) -> float:
    return abs(integrate(grid, jet.h ** 3 + jet.h ** 2 * jet.lap + jet.h * jet.dethess))


def blaschke_residual(volume_value: float, area_value: float, w: float) -> float:
    return abs(volume_value - w * area_value + 8 / 3 * np.pi * w ** 3)


def evaluate(coeffs: OddHarmonicCoeffs, w: float, grid: SphereGrid) -> FunctionalReport:
    jet = synth_jet(coeffs, grid)
    density = area_element(jet, w)

    direct_volume = volume_direct(jet, w, grid)
    direct_area = area_direct(jet, w, grid)
    min_density = float(np.min(density))

    return FunctionalReport(
        w=w,
        width=2 * w,
        energy=energy(coeffs),
        energy_quadrature=energy_quadrature(jet, grid),
        volume=volume(coeffs, w),
        area=area(coeffs, w),
        ratio=ratio_I(coeffs, w),
        blaschke_residual=blaschke_residual(direct_volume, direct_area, w),
        lemmaH_residual=lemmaH_residual(jet, grid),
        cubic_residual=cubic_residual(jet, grid),
        volume_direct=direct_volume,
        area_direct=direct_area,
        min_density=min_density,
        below_floor=min_density < -BELOW_FLOOR_TOLERANCE * max(w ** 2, 1.0)
    )

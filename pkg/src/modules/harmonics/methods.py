from functools import lru_cache

import numpy as np
from loguru import logger
from scipy.spatial.transform import Rotation

from core.exceptions import GridException, ParityViolationException
from core.models.coeffs import OddHarmonicCoeffs, odd_modes
from core.models.grid import SphereGrid
from core.models.jet import HarmonicBasis, SupportJet
from modules.sphere_grid.methods import integrate

PARITY_TOLERANCE = 1e-8


def normalized_legendre(
    degrees: set[int],
    lmax: int,
    theta: np.ndarray
) -> dict[tuple[int, int], tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Orthonormal associated Legendre functions p_lm(θ) (no Condon–Shortley phase) with dθ and dθθ.

    p_lm(θ)·e^{imφ} is unit-normalized on the sphere; the second derivative comes from the Legendre
    equation, which is why θ must stay off the poles.
    """

    cos_theta = np.cos(theta)
    sin_theta = np.sin(theta)
    cot_theta = cos_theta / sin_theta

    table = {}
    p_mm = np.full_like(theta, 1 / np.sqrt(4 * np.pi))

    for m in range(lmax + 1):
        if m > 0:
            p_mm = np.sqrt((2 * m + 1) / (2 * m)) * sin_theta * p_mm

        previous, current = np.zeros_like(theta), p_mm

        for l in range(m, lmax + 1):
            if l > m:
                a_lm = np.sqrt((4 * l ** 2 - 1) / (l ** 2 - m ** 2))
                b_lm = np.sqrt(((l - 1) ** 2 - m ** 2) / (4 * (l - 1) ** 2 - 1))

                previous, current = current, a_lm * (cos_theta * current - b_lm * previous)

            if l not in degrees:
                continue

            d_theta = (l * cos_theta * current - np.sqrt((2 * l + 1) * (l ** 2 - m ** 2) / (2 * l - 1)) * previous) / sin_theta
            d_theta_theta = -cot_theta * d_theta + (m ** 2 / sin_theta ** 2 - l * (l + 1)) * current

            table[(l, m)] = current, d_theta, d_theta_theta

    return table


def build_basis(modes: tuple[tuple[int, int], ...], theta: np.ndarray, phi: np.ndarray) -> HarmonicBasis:
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))

    degrees = {l for l, _ in modes}
    table = normalized_legendre(degrees, max(degrees, default=0), theta)

    shape = (len(modes), theta.shape[0])
    value, d_theta, d_phi, d_theta_theta, d_theta_phi, d_phi_phi = (np.empty(shape) for _ in range(6))

    for index, (l, m) in enumerate(modes):
        p, dp, ddp = table[(l, abs(m))]
        order = abs(m)

        if m == 0:
            trig, trig_prime = np.ones_like(phi), np.zeros_like(phi)
        elif m > 0:
            trig, trig_prime = np.sqrt(2) * np.cos(order * phi), -np.sqrt(2) * order * np.sin(order * phi)
        else:
            trig, trig_prime = np.sqrt(2) * np.sin(order * phi), np.sqrt(2) * order * np.cos(order * phi)

        value[index] = p * trig
        d_theta[index] = dp * trig
        d_phi[index] = p * trig_prime
        d_theta_theta[index] = ddp * trig
        d_theta_phi[index] = dp * trig_prime
        d_phi_phi[index] = -order ** 2 * value[index]

    return HarmonicBasis(modes, theta, phi, value, d_theta, d_phi, d_theta_theta, d_theta_phi, d_phi_phi)


@lru_cache(maxsize=16)
def grid_basis(grid: SphereGrid, lmax: int, include_degree_one: bool) -> HarmonicBasis:
    logger.debug(f'Базис гармоник до степени {lmax} на сетке {grid.n_theta}x{grid.n_phi}')
    return build_basis(odd_modes(lmax, include_degree_one), grid.theta, grid.phi)


def synth_basis_jet(basis: HarmonicBasis, values: np.ndarray) -> SupportJet:
    h = values @ basis.value
    h_theta = values @ basis.d_theta
    h_phi = values @ basis.d_phi

    sin_theta = np.sin(basis.theta)
    cot_theta = np.cos(basis.theta) / sin_theta

    return SupportJet(
        theta=basis.theta,
        phi=basis.phi,
        h=h,
        grad_theta=h_theta,
        grad_phi=h_phi / sin_theta,
        a=values @ basis.d_theta_theta,
        b=(values @ basis.d_theta_phi - cot_theta * h_phi) / sin_theta,
        c=(values @ basis.d_phi_phi) / sin_theta ** 2 + cot_theta * h_theta
    )


def synth_jet(coeffs: OddHarmonicCoeffs, grid: SphereGrid) -> SupportJet:
    if grid.band_limit < 2 * coeffs.lmax:
        raise GridException(
            f'Сетка точна до степени {grid.band_limit}, требуется не меньше {2 * coeffs.lmax} для lmax={coeffs.lmax}'
        )

    return synth_basis_jet(grid_basis(grid, coeffs.lmax, coeffs.include_degree_one), coeffs.values)


def jet_at(coeffs: OddHarmonicCoeffs, theta: np.ndarray | float, phi: np.ndarray | float) -> SupportJet:
    return synth_basis_jet(build_basis(coeffs.modes, theta, phi), coeffs.values)


def project(
    field: np.ndarray,
    grid: SphereGrid,
    lmax: int,
    include_degree_one: bool = False
) -> OddHarmonicCoeffs:
    if grid.band_limit < 2 * lmax:
        raise GridException(f'Сетка точна до степени {grid.band_limit}, требуется не меньше {2 * lmax}')

    field = np.asarray(field, dtype=float)

    even_part = (field + field[grid.antipode_index]) / 2
    even_rms = np.sqrt(integrate(grid, even_part ** 2) / (4 * np.pi))
    scale = max(1.0, float(np.max(np.abs(field), initial=0.0)))

    if even_rms > PARITY_TOLERANCE * scale:
        raise ParityViolationException(f'Поле не является нечётным: чётная часть {even_rms:.3e}')

    basis = grid_basis(grid, lmax, include_degree_one)
    values = basis.value @ (grid.weights * field)

    return OddHarmonicCoeffs(lmax, values, include_degree_one)


def synth_field(coeffs: OddHarmonicCoeffs, grid: SphereGrid) -> np.ndarray:
    return coeffs.values @ grid_basis(grid, coeffs.lmax, coeffs.include_degree_one).value


def spherical_angles(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    points = points / np.linalg.norm(points, axis=-1, keepdims=True)
    return np.arccos(np.clip(points[..., 2], -1.0, 1.0)), np.mod(np.arctan2(points[..., 1], points[..., 0]), 2 * np.pi)


def rotate(coeffs: OddHarmonicCoeffs, rotation: Rotation, grid: SphereGrid) -> OddHarmonicCoeffs:
    """Coefficients of u ↦ h(R⁻¹u); exact because each degree is a rotation-invariant subspace."""

    theta, phi = spherical_angles(rotation.inv().apply(grid.u))
    field = jet_at(coeffs, theta, phi).h

    return project(field, grid, coeffs.lmax, coeffs.include_degree_one)

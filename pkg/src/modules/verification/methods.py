from typing import Callable

import numpy as np
from loguru import logger

from core.models.coeffs import OddHarmonicCoeffs
from core.schemes.body import Discriminant
from modules.bodies.methods import ball, random_odd
from modules.functionals.methods import (
    area, blaschke_residual, cubic_residual, energy, energy_quadrature, evaluate, lemmaH_residual, ratio_I, volume
)
from modules.geometry.methods import alpha_beta
from modules.harmonics.methods import synth_jet
from modules.optimizer.methods import objective, second_variation_check
from modules.sphere_grid.methods import default_grid, integrate
from modules.verification.schemes import IdentityCheck, SuiteReport
from modules.width_floor.methods import bisection_floor, w_floor

DEGREES = (3, 5, 7, 9)


def _check(name: str, values: list[float], threshold: float) -> IdentityCheck:
    value = float(np.max(values))
    check = IdentityCheck(name=name, value=value, threshold=threshold, samples=len(values), passed=value <= threshold)

    logger.debug(f'Проверка {name}: {value:.3e} (порог {threshold:.0e}, выборок {len(values)})')
    return check


def _sample(rng: np.random.Generator, count: int, degrees: tuple[int, ...] = DEGREES) -> list[OddHarmonicCoeffs]:
    return [
        random_odd(int(rng.choice(degrees)), int(rng.integers(2 ** 32)), scale=float(rng.uniform(0.1, 2.0)))
        for _ in range(count)
    ]


def ball_exactness() -> IdentityCheck:
    coeffs = ball()
    grid = default_grid(coeffs.lmax)
    errors = []

    for w in (0.5, 1.0, 3.0):
        report = evaluate(coeffs, w, grid)

        errors.extend((
            abs(report.volume - 4 * np.pi / 3 * w ** 3) / w ** 3,
            abs(report.area - 4 * np.pi * w ** 2) / w ** 2,
            abs(report.volume_direct - 4 * np.pi / 3 * w ** 3) / w ** 3,
            abs(report.area_direct - 4 * np.pi * w ** 2) / w ** 2,
            abs(report.ratio - 1.0)
        ))

    return _check('ball_exactness', errors, 1e-12)


def wirtinger(rng: np.random.Generator) -> IdentityCheck:
    shortfalls = [max(0.0, -energy(coeffs)) for coeffs in _sample(rng, 200)]

    translation = OddHarmonicCoeffs.from_entries({(1, 0): 1.0, (1, 1): -0.5}, 3, include_degree_one=True)
    shortfalls.append(abs(energy(translation)))

    return _check('wirtinger', shortfalls, 0.0)


def energy_agreement(rng: np.random.Generator) -> IdentityCheck:
    errors = []

    for coeffs in _sample(rng, 50):
        grid = default_grid(coeffs.lmax)
        spectral = energy(coeffs)
        errors.append(abs(spectral - energy_quadrature(synth_jet(coeffs, grid), grid)) / (1 + spectral))

    return _check('energy_agreement', errors, 1e-10)


def hessian_identity(rng: np.random.Generator) -> IdentityCheck:
    errors = []

    for coeffs in _sample(rng, 100, (3, 5, 7)):
        grid = default_grid(coeffs.lmax)
        jet = synth_jet(coeffs, grid)
        errors.append(lemmaH_residual(jet, grid) / (1 + 2 * (energy(coeffs) + coeffs.norm ** 2)))

    return _check('hessian_identity', errors, 1e-9)


def blaschke(rng: np.random.Generator) -> IdentityCheck:
    errors = []

    for coeffs in _sample(rng, 100):
        grid = default_grid(coeffs.lmax)
        w = w_floor(coeffs, grid, refine_levels=0).w0 * (1 + float(rng.uniform(0.0, 1.0))) + 1e-3
        report = evaluate(coeffs, w, grid)

        errors.append(report.blaschke_residual / (1 + report.volume_direct))
        errors.append(blaschke_residual(volume(coeffs, w), area(coeffs, w), w) / (1 + report.volume))

    return _check('blaschke', errors, 1e-10)


def dual_path(rng: np.random.Generator) -> IdentityCheck:
    errors = []

    for coeffs in _sample(rng, 50):
        grid = default_grid(coeffs.lmax)
        w = w_floor(coeffs, grid, refine_levels=0).w0 * 1.5 + 1e-3
        report = evaluate(coeffs, w, grid)

        errors.append(abs(report.volume - report.volume_direct) / report.volume)
        errors.append(abs(report.area - report.area_direct) / report.area)

    return _check('dual_path', errors, 1e-8)


def cubic_parity(rng: np.random.Generator) -> IdentityCheck:
    errors = []

    for coeffs in _sample(rng, 50):
        grid = default_grid(coeffs.lmax)
        jet = synth_jet(coeffs, grid)
        scale = integrate(grid, np.abs(jet.h ** 3 + jet.h ** 2 * jet.lap + jet.h * jet.dethess))

        errors.append(cubic_residual(jet, grid) / (1 + scale))

    return _check('cubic_parity', errors, 1e-10)


def alpha_beta_parity(rng: np.random.Generator) -> IdentityCheck:
    errors = []

    for coeffs in _sample(rng, 50):
        grid = default_grid(coeffs.lmax)
        alpha, beta = alpha_beta(synth_jet(coeffs, grid))
        antipode = grid.antipode_index

        errors.append(float(np.max(np.abs(alpha + alpha[antipode]))) / (1 + float(np.max(np.abs(alpha)))))
        errors.append(float(np.max(np.abs(beta - beta[antipode]))) / (1 + float(np.max(np.abs(beta)))))

    return _check('alpha_beta_parity', errors, 1e-12)


def floor_homogeneity(rng: np.random.Generator, discriminant: Discriminant) -> IdentityCheck:
    errors = []

    for coeffs in _sample(rng, 20):
        grid = default_grid(coeffs.lmax)
        w0 = w_floor(coeffs, grid, refine_levels=0, discriminant=discriminant).w0

        for scale in (0.5, 2.0, 3.0):
            scaled = w_floor(scale * coeffs, grid, refine_levels=0, discriminant=discriminant).w0
            errors.append(abs(scaled - scale * w0) / (scale * w0))

    return _check('floor_homogeneity', errors, 1e-8)


def floor_bisection(rng: np.random.Generator, discriminant: Discriminant) -> IdentityCheck:
    errors = []

    for coeffs in _sample(rng, 50):
        grid = default_grid(coeffs.lmax)
        w0 = w_floor(coeffs, grid, refine_levels=0, discriminant=discriminant).w0
        errors.append(abs(w0 - bisection_floor(coeffs, grid)) / max(w0, 1e-12))

    return _check('floor_bisection', errors, 1e-6)


def scale_invariance(rng: np.random.Generator, discriminant: Discriminant) -> IdentityCheck:
    errors = []

    for coeffs in _sample(rng, 20):
        grid = default_grid(coeffs.lmax)
        base = objective(coeffs, grid, discriminant=discriminant).value
        w0 = w_floor(coeffs, grid, refine_levels=0, discriminant=discriminant).w0

        for scale in (0.5, 2.0, 10.0):
            errors.append(abs(objective(scale * coeffs, grid, discriminant=discriminant).value - base) / base)
            errors.append(abs(ratio_I(scale * coeffs, scale * w0) - ratio_I(coeffs, w0)))

    return _check('scale_invariance', errors, 1e-8)


def quadraticity(rng: np.random.Generator) -> IdentityCheck:
    errors = []

    for coeffs in _sample(rng, 50):
        v = random_odd(coeffs.lmax, int(rng.integers(2 ** 32)))
        eps = float(rng.uniform(1e-3, 1.0))

        errors.append(second_variation_check(coeffs, v, eps) / (1 + energy(coeffs) + eps ** 2 * energy(v)))

    return _check('quadraticity', errors, 1e-10)


def run_suite(seed: int = 0, discriminant: Discriminant = Discriminant.EXACT) -> SuiteReport:
    """Runs every analytic identity check on random odd fields drawn from one seed."""

    rng = np.random.default_rng(seed)

    suite: list[Callable[[], IdentityCheck]] = [
        ball_exactness,
        lambda: wirtinger(rng),
        lambda: energy_agreement(rng),
        lambda: hessian_identity(rng),
        lambda: blaschke(rng),
        lambda: dual_path(rng),
        lambda: cubic_parity(rng),
        lambda: alpha_beta_parity(rng),
        lambda: floor_homogeneity(rng, discriminant),
        lambda: floor_bisection(rng, discriminant),
        lambda: scale_invariance(rng, discriminant),
        lambda: quadraticity(rng)
    ]

    checks = [check() for check in suite]
    failed = [check.name for check in checks if not check.passed]

    if failed:
        logger.warning(f'Проверки не пройдены: {", ".join(failed)}')
    else:
        logger.info(f'Все проверки пройдены ({len(checks)})')

    return SuiteReport(seed=seed, discriminant=discriminant, checks=checks, passed=not failed)

from typing import NamedTuple

import numpy as np
from loguru import logger
from scipy.optimize import minimize
from scipy.spatial.transform import Rotation
from scipy.special import logsumexp

from core.exceptions import BelowFloorException, InputValidationException, ZeroCoefficientsException
from core.models.coeffs import OddHarmonicCoeffs, odd_modes
from core.models.grid import SphereGrid
from core.objects.pool import executor
from core.schemes.body import Discriminant, VerificationStatus
from modules.functionals.methods import area, energy, ratio_I, volume, volume_direct
from modules.geometry.methods import area_element, curvatures
from modules.harmonics.methods import project, rotate, synth_field, synth_jet
from modules.harmonics.schemes import CoefficientsFile
from modules.optimizer.schemes import CandidateBody, FlowStep, OptimizerConfig, RestartTrace, VerificationReport
from modules.sphere_grid.methods import build_grid, default_grid, integrate
from modules.width_floor.methods import w_field, w_floor

FLOOR_TOLERANCE = 1e-9


class ObjectiveValue(NamedTuple):
    value: float
    w0: float
    energy: float
    gauge: bool


def objective(
    coeffs: OddHarmonicCoeffs,
    grid: SphereGrid,
    refine_levels: int = 0,
    temperature: float = 0.0,
    discriminant: Discriminant = Discriminant.EXACT
) -> ObjectiveValue:
    """𝓔(h)/w₀(h)²; maximising it minimises 𝓘 at the width floor."""

    if coeffs.norm == 0:
        raise ZeroCoefficientsException('Целевая функция не определена для нулевых коэффициентов')

    value = energy(coeffs)

    if value <= 0:
        return ObjectiveValue(0.0, 0.0, value, True)

    if temperature > 0:
        w0 = float(temperature * logsumexp(w_field(synth_jet(coeffs, grid), discriminant) / temperature))
    else:
        w0 = w_floor(coeffs, grid, refine_levels, discriminant).w0

    if w0 <= 0:
        return ObjectiveValue(0.0, 0.0, value, True)

    return ObjectiveValue(value / w0 ** 2, w0, value, False)


def second_variation_check(coeffs: OddHarmonicCoeffs, v: OddHarmonicCoeffs, eps: float) -> float:
    if v.include_degree_one and np.any(v.values[v.degrees == 1] != 0):
        raise InputValidationException('Возмущение не должно содержать гармоник первой степени')

    return abs(energy(coeffs + eps * v) - 2 * energy(coeffs) + energy(coeffs - eps * v) - 2 * eps ** 2 * energy(v))


def normal_flow(
    coeffs: OddHarmonicCoeffs,
    w_start: float,
    w_end: float,
    steps: int,
    grid: SphereGrid,
    refine_levels: int = 2
) -> list[FlowStep]:
    """Parallel bodies of h + w for w from w_start down to w_end; h is invariant along the inward flow."""

    if steps < 2:
        raise InputValidationException(f'Число шагов потока должно быть не меньше 2: {steps}')

    if w_start < w_end:
        raise InputValidationException(f'Поток идёт внутрь: w_start={w_start} меньше w_end={w_end}')

    w0 = w_floor(coeffs, grid, refine_levels).w0

    if w_end < w0 * (1 - FLOOR_TOLERANCE):
        raise BelowFloorException(f'w_end={w_end} ниже порога выпуклости w0={w0}')

    jet = synth_jet(coeffs, grid)
    trajectory = []

    for w in np.linspace(w_start, w_end, steps):
        w = float(w)

        trajectory.append(
            FlowStep(
                w=w,
                ratio=ratio_I(coeffs, w),
                volume=volume(coeffs, w),
                area=area(coeffs, w),
                volume_direct=volume_direct(jet, w, grid),
                min_density=float(np.min(area_element(jet, w)))
            )
        )

    return trajectory


def bump_perturbation(
    center: np.ndarray,
    radius: float,
    lmax: int,
    grid: SphereGrid
) -> tuple[OddHarmonicCoeffs, float]:
    """Band-limited odd projection of a smooth bump supported in U ∪ (−U), and its relative leakage norm."""

    def bump(cosine: np.ndarray) -> np.ndarray:
        distance = np.arccos(np.clip(cosine, -1.0, 1.0)) / radius

        with np.errstate(divide='ignore', over='ignore'):
            return np.where(distance < 1, np.exp(-1 / (1 - np.minimum(distance, 1 - 1e-12) ** 2)), 0.0)

    cosine = grid.u @ center
    field = bump(cosine) - bump(-cosine)

    coeffs = project(field, grid, lmax)
    leakage = np.sqrt(integrate(grid, (field - synth_field(coeffs, grid)) ** 2) / integrate(grid, field ** 2))

    return coeffs, float(leakage)


def second_variation_diagnostic(
    coeffs: OddHarmonicCoeffs,
    w0: float,
    grid: SphereGrid,
    delta_smooth: float = 1e-3,
    eps: float = 1e-3,
    refine_levels: int = 2
) -> tuple[float, float] | None:
    """Objective gain of ±ε bump perturbations centred on the most doubly smooth antipodal pair."""

    density = area_element(synth_jet(coeffs, grid), w0)
    pair_density = np.minimum(density, density[grid.antipode_index])

    if np.max(pair_density) < delta_smooth * w0 ** 2:
        return None

    center = grid.u[int(np.argmax(pair_density))]
    bump, leakage = bump_perturbation(center, min(4 * grid.cell[0], 0.5), coeffs.lmax, grid)

    if bump.norm == 0:
        return None

    scale = coeffs.norm / bump.norm
    base = objective(coeffs, grid, refine_levels).value
    gain = max(objective(coeffs + sign * eps * scale * bump, grid, refine_levels).value for sign in (1.0, -1.0)) - base

    return gain, leakage


def verify_necessary_conditions(
    coeffs: OddHarmonicCoeffs,
    w: float,
    grid: SphereGrid,
    delta_smooth: float = 1e-3,
    tol: float = 5e-2
) -> VerificationReport:
    jet = synth_jet(coeffs, grid)
    density = area_element(jet, w)
    k1, k2, _, _, defined = curvatures(jet, w)

    smooth = density >= delta_smooth * w ** 2
    curved = smooth & defined

    antipodal = np.minimum(density, density[grid.antipode_index])[smooth] / w ** 2
    antipodal_score = float(np.max(antipodal, initial=0.0))
    k2_deviation = float(np.max(np.abs(2 * w * k2[curved] - 1), initial=0.0))
    k2_is_smaller = float(np.mean(k2[curved] <= k1[curved])) if np.any(curved) else 1.0

    passed = antipodal_score <= tol and k2_deviation <= tol

    return VerificationReport(
        w=w,
        delta_smooth=delta_smooth,
        tolerance=tol,
        antipodal_vanishing_score=antipodal_score,
        k2_deviation=k2_deviation,
        k2_is_smaller=k2_is_smaller,
        smooth_fraction=float(np.mean(smooth)),
        status=VerificationStatus.PASS if passed else VerificationStatus.FAIL
    )


def canonicalize(coeffs: OddHarmonicCoeffs, grid: SphereGrid) -> tuple[np.ndarray, OddHarmonicCoeffs]:
    """Rotates h so that the maximum direction of its degree-3 component becomes +z."""

    cubic = synth_field(coeffs.restricted(3), grid)
    axis = grid.u[int(np.argmax(cubic))]

    rotation, _ = Rotation.align_vectors([[0.0, 0.0, 1.0]], [axis])
    return axis, rotate(coeffs, rotation, grid)


class RestartSearch:
    """Nelder–Mead over odd coefficient vectors, re-projected to the normalization sphere between rounds."""

    def __init__(self, config: OptimizerConfig, grid: SphereGrid):
        self.__config = config
        self.__grid = grid

        modes = odd_modes(config.lmax)
        self.__mask = np.array([m == 0 or not config.axisymmetric for _, m in modes])
        self.__size = len(modes)

    @property
    def dimension(self) -> int:
        return int(np.count_nonzero(self.__mask))

    def coeffs(self, x: np.ndarray) -> OddHarmonicCoeffs:
        values = np.zeros(self.__size)
        values[self.__mask] = self.__config.normalization * x / np.linalg.norm(x)

        return OddHarmonicCoeffs(self.__config.lmax, values)

    def vector(self, coeffs: OddHarmonicCoeffs) -> np.ndarray:
        x = coeffs.resized(self.__config.lmax, include_degree_one=False).values[self.__mask]
        return x / np.linalg.norm(x)

    def __negative_objective(self, x: np.ndarray) -> float:
        if not np.all(np.isfinite(x)) or np.linalg.norm(x) == 0:
            return 0.0

        return -objective(
            self.coeffs(x),
            self.__grid,
            self.__config.floor_refine_levels,
            self.__config.soft_max_temperature
        ).value

    def __start(self, restart: int) -> np.ndarray:
        if restart == 0:
            initial = self.__config.initial
            return self.vector(axisymmetric_baseline(self.__config.lmax) if initial is None else initial.to_coeffs())

        x = np.random.default_rng([self.__config.seed, restart]).standard_normal(self.dimension)
        return x / np.linalg.norm(x)

    def run(self, restart: int) -> tuple[np.ndarray, RestartTrace]:
        config = self.__config

        x = self.__start(restart)
        best = self.__negative_objective(x)
        history = [-best]
        iterations = evaluations = rounds = 0

        def record(intermediate_result):
            history.append(max(history[-1], -float(intermediate_result.fun)))

        for rounds in range(1, config.max_rounds + 1):
            simplex = np.vstack((x, x + config.initial_step * np.eye(self.dimension)))

            result = minimize(
                self.__negative_objective,
                x,
                method='Nelder-Mead',
                callback=record,
                options={
                    'maxiter': config.max_iters,
                    'xatol': config.xatol,
                    'fatol': config.objective_tolerance / 10,
                    'initial_simplex': simplex
                }
            )

            iterations += int(result.nit)
            evaluations += int(result.nfev)

            candidate = result.x / np.linalg.norm(result.x)
            value = self.__negative_objective(candidate)
            improvement = best - value

            if value < best:
                x, best = candidate, value
                history.append(max(history[-1], -best))

            if improvement <= config.objective_tolerance:
                break

        logger.info(f'Рестарт {restart}: цель {-best:.12g} за {rounds} раундов, {evaluations} вычислений')

        return x, RestartTrace(
            restart=restart,
            objective=-best,
            ratio=1 - 3 / (4 * np.pi) * -best,
            rounds=rounds,
            iterations=iterations,
            evaluations=evaluations,
            history=history
        )


def optimization_grid(config: OptimizerConfig) -> SphereGrid:
    if config.grid_theta is not None:
        return build_grid(config.grid_theta, config.grid_phi)

    return default_grid(config.lmax, oversampling=2)


def axisymmetric_baseline(lmax: int) -> OddHarmonicCoeffs:
    return OddHarmonicCoeffs.from_entries({(3, 0): 1.0}, lmax)


def optimize(config: OptimizerConfig) -> CandidateBody:
    grid = optimization_grid(config)
    search = RestartSearch(config, grid)

    logger.info(
        f'Поиск минимизатора: lmax={config.lmax}, размерность {search.dimension}, '
        f'сетка {grid.n_theta}x{grid.n_phi}, рестартов {config.restarts}'
    )

    futures = [executor.submit(search.run, restart) for restart in range(config.restarts)]
    results = [future.result() for future in futures]

    # restart results in order, then the degree-3 axisymmetric start; first maximum wins
    points = [x for x, _ in results] + [search.vector(axisymmetric_baseline(config.lmax))]
    scores = [objective(search.coeffs(x), grid, config.final_refine_levels) for x in points]
    best = int(np.argmax([score.value for score in scores]))

    coeffs = search.coeffs(points[best])
    w0 = scores[best].w0
    baseline_ratio = ratio_I(search.coeffs(points[-1]), scores[-1].w0)

    if best == len(results):
        logger.warning('Ни один рестарт не превзошёл осесимметричный старт степени 3 после уточнения порога')

    verification = verify_necessary_conditions(coeffs, w0, grid, config.delta_smooth, config.verification_tolerance)
    diagnostic = second_variation_diagnostic(coeffs, w0, grid, config.delta_smooth, refine_levels=config.final_refine_levels)

    if diagnostic is not None:
        verification.bump_gain, verification.bump_leakage = diagnostic

    axis, canonical = canonicalize(coeffs, grid)
    ratio = ratio_I(coeffs, w0)

    logger.info(
        f'Лучший кандидат: 𝓘={ratio:.12g} (осесимметричный старт степени 3: {baseline_ratio:.12g}), '
        f'проверка {verification.status}'
    )

    return CandidateBody(
        coeffs=CoefficientsFile.from_coeffs(coeffs),
        w0=w0,
        ratio=ratio,
        objective=energy(coeffs) / w0 ** 2,
        axisymmetric=config.axisymmetric,
        baseline_ratio=baseline_ratio,
        canonical_axis=tuple(float(value) for value in axis),
        canonical_coeffs=CoefficientsFile.from_coeffs(canonical),
        verification=verification,
        restarts=[trace for _, trace in results]
    )

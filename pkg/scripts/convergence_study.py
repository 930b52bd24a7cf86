import sys
from pathlib import Path

from loguru import logger

from core.methods.lifespan import Lifespan
from core.methods.reports import write_json
from modules.bodies.methods import monte_carlo_volume, profile_to_coeffs, reuleaux_volume_quad, rotated_reuleaux
from modules.functionals.methods import ratio_I, volume
from modules.optimizer.methods import objective, optimize
from modules.optimizer.schemes import OptimizerConfig
from modules.sphere_grid.methods import default_grid
from modules.width_floor.methods import w_floor

DEGREES = (3, 5, 7, 9)
REULEAUX_DEGREE = 13
AXISYMMETRIC_DEGREE = 9
MONTE_CARLO_SAMPLES = 10 ** 7


def reuleaux_study() -> dict:
    width = 2.0
    coeffs = profile_to_coeffs(rotated_reuleaux(width), REULEAUX_DEGREE)
    w0 = w_floor(coeffs, default_grid(REULEAUX_DEGREE), refine_levels=2).w0

    harmonic = volume(coeffs, width / 2)
    estimate, error = monte_carlo_volume(width, MONTE_CARLO_SAMPLES)
    exact = reuleaux_volume_quad(width)

    logger.info(
        f'Тело вращения треугольника Рёло: объём по гармоникам {harmonic:.8f}, '
        f'Монте-Карло {estimate:.8f} ± {error:.1e}, квадратура {exact:.8f}'
    )
    logger.info(f'Проекция lmax={REULEAUX_DEGREE}: порог w0={w0:.8f}, 𝓘 на пороге {ratio_I(coeffs, w0):.8f}')

    return {
        'volume_harmonic': harmonic,
        'volume_monte_carlo': estimate,
        'monte_carlo_error': error,
        'volume_quad': exact,
        'relative_gap': abs(harmonic - estimate) / estimate,
        'w0': w0,
        'ratio': ratio_I(coeffs, w0),
        'ratio_at_half_width': ratio_I(coeffs, width / 2)
    }


def axisymmetric_study() -> dict:
    profile = profile_to_coeffs(rotated_reuleaux(2.0), AXISYMMETRIC_DEGREE)
    profile = profile * (1 / profile.norm)
    grid = default_grid(AXISYMMETRIC_DEGREE, oversampling=2)

    candidate = optimize(OptimizerConfig(lmax=AXISYMMETRIC_DEGREE, axisymmetric=True, restarts=4))
    target = objective(profile, grid, refine_levels=2).value
    gap = abs(candidate.objective - target) / target

    logger.info(f'Осесимметричный поиск: цель {candidate.objective:.8f}, профиль {target:.8f}, разрыв {gap:.2%}')

    return {
        'objective': candidate.objective,
        'profile_objective': target,
        'gap': gap,
        'reaches_profile': candidate.objective >= target
    }


def main(path: Path):
    results = {'degrees': {}}

    for lmax in DEGREES:
        candidate = optimize(OptimizerConfig(lmax=lmax, restarts=8))
        verification = candidate.verification

        results['degrees'][str(lmax)] = {
            'ratio': candidate.ratio,
            'w0': candidate.w0,
            'antipodal_vanishing_score': verification.antipodal_vanishing_score,
            'k2_deviation': verification.k2_deviation,
            'status': verification.status,
            'coeffs': candidate.coeffs.model_dump(mode='json')
        }

        logger.info(
            f'lmax={lmax}: 𝓘={candidate.ratio:.8f}, антиподальная оценка {verification.antipodal_vanishing_score:.3e}, '
            f'отклонение k2 {verification.k2_deviation:.3e}, {verification.status}'
        )

    seven, nine = results['degrees']['7'], results['degrees']['9']
    results['scores_decrease'] = all(nine[key] < seven[key] for key in ('antipodal_vanishing_score', 'k2_deviation'))

    if not results['scores_decrease']:
        logger.warning('Оценки необходимых условий не убывают при переходе от lmax=7 к lmax=9')

    results['reuleaux'] = reuleaux_study()
    results['axisymmetric'] = axisymmetric_study()

    best = min(entry['ratio'] for lmax, entry in results['degrees'].items() if int(lmax) >= 5)
    ordered = best < results['reuleaux']['ratio'] < 1
    results['ordering_holds'] = ordered

    if ordered:
        logger.info(f'Порядок подтверждён: {best:.8f} < {results["reuleaux"]["ratio"]:.8f} < 1')
    else:
        logger.warning(f'Порядок нарушен: лучший {best:.8f}, Рёло {results["reuleaux"]["ratio"]:.8f}')

    write_json(path, results)


if __name__ == '__main__':
    with Lifespan.run():
        main(Path(sys.argv[1] if len(sys.argv) > 1 else 'convergence_study.json'))

from argparse import Namespace
from pathlib import Path

from loguru import logger

from core.exceptions import InputValidationException
from core.methods.reports import read_model, write_json
from core.methods.router import CommandRouter, argument
from general.arguments import (
    FLOOR, coeffs_argument, emit, grid_arguments, load_coefficients, out_argument, resolve_grid, start_manifest,
    width_value
)
from modules.optimizer.methods import normal_flow, optimization_grid, optimize
from modules.optimizer.schemes import OptimizerConfig
from modules.width_floor.methods import w_floor

router = CommandRouter()


@router.command(
    'optimize',
    help='поиск тела постоянной ширины с наименьшим отношением 𝓘',
    arguments=(
        argument('--config', type=Path, required=True, help='JSON-файл OptimizerConfig'),
        argument('--seed', type=int, default=None, help='переопределяет seed из конфигурации'),
        argument('--lmax', type=int, default=None, help='переопределяет lmax из конфигурации'),
        argument('--out', type=Path, required=True, help='файл кандидата; отчёт пишется рядом с суффиксом .report.json')
    )
)
def optimize_body(arguments: Namespace):
    recorder = start_manifest(arguments)
    config = read_model(arguments.config, OptimizerConfig)
    recorder.input(arguments.config)

    overrides = {key: getattr(arguments, key) for key in ('seed', 'lmax') if getattr(arguments, key) is not None}

    if overrides:
        config = OptimizerConfig.model_validate({**config.model_dump(), **overrides})

    grid = optimization_grid(config)
    recorder.manifest.seeds = [config.seed]
    recorder.manifest.grid = (grid.n_theta, grid.n_phi)
    recorder.manifest.arguments['config'] = config.model_dump(mode='json')

    candidate = optimize(config)
    content = write_json(arguments.out, candidate)
    recorder.output(arguments.out, content)

    report = arguments.out.with_suffix('.report.json')
    emit(report, recorder, {
        'ratio': candidate.ratio,
        'baseline_ratio': candidate.baseline_ratio,
        'verification': candidate.verification.model_dump(mode='json'),
        'restarts': [trace.model_dump(mode='json') for trace in candidate.restarts]
    })

    logger.info(f'Кандидат записан в {arguments.out}, отчёт в {report}')


@router.command(
    'flow',
    help='параллельные тела h + w при уменьшении w до порога выпуклости',
    arguments=(
        coeffs_argument,
        argument('--w-start', type=float, required=True, help='начальное значение w'),
        argument('--w-end', type=width_value, default=FLOOR, help='конечное значение w или "floor"'),
        argument('--steps', type=int, default=11, help='число шагов потока'),
        argument('--refine-levels', type=int, default=2, help='уровни уточнения w0'),
        *grid_arguments,
        out_argument
    )
)
def flow_body(arguments: Namespace):
    recorder = start_manifest(arguments)
    coeffs = load_coefficients(arguments.coeffs, recorder)
    grid = resolve_grid(arguments, coeffs.lmax)
    recorder.manifest.grid = (grid.n_theta, grid.n_phi)

    w0 = w_floor(coeffs, grid, arguments.refine_levels).w0
    w_end = w0 if arguments.w_end == FLOOR else arguments.w_end

    if w_end <= 0:
        raise InputValidationException(f'Конечное значение w должно быть положительным: {w_end}')

    trajectory = normal_flow(coeffs, arguments.w_start, w_end, arguments.steps, grid, arguments.refine_levels)

    emit(arguments.out, recorder, {
        'w0': w0,
        'trajectory': [step.model_dump(mode='json') for step in trajectory]
    })

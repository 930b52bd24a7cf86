import numpy as np
import pytest

from core.exceptions import BelowFloorException, InputValidationException, ZeroCoefficientsException
from core.models.coeffs import OddHarmonicCoeffs
from core.schemes.body import VerificationStatus
from modules.bodies.methods import ball, profile_to_coeffs, random_odd, rotated_reuleaux
from modules.functionals.methods import energy, ratio_I
from modules.geometry.methods import embed
from modules.harmonics.methods import synth_field, synth_jet
from modules.harmonics.schemes import CoefficientsFile
from modules.optimizer.methods import (
    RestartSearch, axisymmetric_baseline, bump_perturbation, canonicalize, normal_flow, objective, optimization_grid,
    optimize, second_variation_check, second_variation_diagnostic, verify_necessary_conditions
)
from modules.optimizer.schemes import OptimizerConfig
from modules.sphere_grid.methods import default_grid
from modules.width_floor.methods import bisection_floor, w_floor


@pytest.fixture
def config(cubic) -> OptimizerConfig:
    return OptimizerConfig(
        lmax=3,
        restarts=2,
        max_iters=300,
        max_rounds=2,
        initial=CoefficientsFile.from_coeffs(cubic)
    )


def test_objective_requires_nonzero_coefficients():
    with pytest.raises(ZeroCoefficientsException):
        objective(ball(), default_grid(3))


def test_objective_of_a_translation_is_gauge():
    translation = OddHarmonicCoeffs.from_entries({(1, 0): 1.0}, 3, include_degree_one=True)
    value = objective(translation, default_grid(3))

    assert value.gauge
    assert value.value == 0.0


def test_objective_of_degree_three_harmonic(cubic):
    grid = default_grid(3)
    value = objective(cubic, grid)

    assert not value.gauge
    assert value.value == pytest.approx(5 / bisection_floor(cubic, grid) ** 2, rel=2e-6)


def test_objective_is_scale_invariant(generic):
    grid = default_grid(generic.lmax)
    base = objective(generic, grid).value

    for scale in (0.5, 2.0, 10.0):
        assert objective(scale * generic, grid).value == pytest.approx(base, rel=1e-8)


def test_soft_maximum_underestimates_the_objective(generic):
    grid = default_grid(generic.lmax)
    hard = objective(generic, grid).value
    soft = objective(generic, grid, temperature=1e-3).value

    assert soft <= hard
    assert soft == pytest.approx(hard, rel=5e-2)


def test_energy_is_exactly_quadratic(rng):
    for _ in range(20):
        coeffs = random_odd(7, seed=int(rng.integers(1000)))
        v = random_odd(7, seed=int(rng.integers(1000)), scale=3.0)
        eps = float(rng.uniform(1e-3, 1.0))

        assert second_variation_check(coeffs, v, eps) <= 1e-10 * (1 + energy(coeffs) + energy(v))

    coeffs = random_odd(5, seed=4)
    assert second_variation_check(coeffs, coeffs, 0.1) <= 1e-12


def test_second_variation_rejects_translations(generic):
    v = OddHarmonicCoeffs.from_entries({(1, 0): 1.0}, 5, include_degree_one=True)

    with pytest.raises(InputValidationException):
        second_variation_check(generic, v, 0.1)


def test_flow_of_the_ball():
    trajectory = normal_flow(ball(), 2.0, 1.0, 5, default_grid(3))

    assert [step.w for step in trajectory] == [2.0, 1.75, 1.5, 1.25, 1.0]

    for step in trajectory:
        assert step.volume == pytest.approx(4 * np.pi / 3 * step.w ** 3, rel=1e-14)
        assert step.ratio == 1.0


def test_ratio_decreases_along_the_flow(generic):
    grid = default_grid(generic.lmax)
    w0 = w_floor(generic, grid).w0
    trajectory = normal_flow(generic, 2 * w0, w0, 8, grid)

    assert all(later.ratio < earlier.ratio for earlier, later in zip(trajectory, trajectory[1:]))
    assert trajectory[-1].min_density >= -1e-8 * w0 ** 2
    assert trajectory[-1].min_density < trajectory[0].min_density


def test_flow_moves_points_along_the_normal(generic):
    grid = default_grid(generic.lmax)
    jet = synth_jet(generic, grid)

    np.testing.assert_allclose(embed(jet, 2.0) - embed(jet, 1.75), 0.25 * grid.u, atol=1e-12)


def test_flow_arguments_are_validated(generic):
    grid = default_grid(generic.lmax)
    w0 = w_floor(generic, grid).w0

    with pytest.raises(InputValidationException):
        normal_flow(generic, 2 * w0, w0, 1, grid)

    with pytest.raises(InputValidationException):
        normal_flow(generic, w0, 2 * w0, 5, grid)

    with pytest.raises(BelowFloorException):
        normal_flow(generic, 2 * w0, w0 / 2, 5, grid)


def test_bump_is_odd_and_localised():
    grid = default_grid(9)
    center = np.array([0.0, 0.6, 0.8])
    bump, leakage = bump_perturbation(center, 0.6, 9, grid)
    field = synth_field(bump, grid)

    assert 0 <= leakage < 1
    assert field[np.argmax(grid.u @ center)] > 0
    assert field[np.argmin(grid.u @ center)] < 0
    np.testing.assert_allclose(field[grid.antipode_index], -field, atol=1e-12)


def test_ball_fails_the_necessary_conditions():
    report = verify_necessary_conditions(ball(), 1.0, default_grid(3))

    assert report.k2_deviation == pytest.approx(1.0)
    assert report.antipodal_vanishing_score == pytest.approx(1.0)
    assert report.smooth_fraction == 1.0
    assert report.status == VerificationStatus.FAIL


def test_second_variation_diagnostic(generic):
    grid = default_grid(generic.lmax)
    w0 = w_floor(generic, grid).w0
    diagnostic = second_variation_diagnostic(generic, w0, grid, refine_levels=0)

    assert diagnostic is not None
    gain, leakage = diagnostic
    assert np.isfinite(gain) and 0 <= leakage < 1


def test_canonical_axis_of_axisymmetric_harmonic(cubic):
    grid = default_grid(3)
    axis, canonical = canonicalize(cubic, grid)

    assert np.linalg.norm(axis) == pytest.approx(1.0)
    assert axis[2] > 0.95
    assert canonical.norm == pytest.approx(cubic.norm, rel=1e-12)
    assert energy(canonical) == pytest.approx(energy(cubic), rel=1e-12)


def test_restart_search_gauge(config):
    search = RestartSearch(config, optimization_grid(config))
    coeffs = search.coeffs(np.arange(1.0, search.dimension + 1))

    assert search.dimension == 7
    assert coeffs.norm == pytest.approx(config.normalization)
    np.testing.assert_allclose(search.vector(coeffs), coeffs.values / coeffs.norm)


def test_axisymmetric_search_uses_zonal_modes():
    config = OptimizerConfig(lmax=7, axisymmetric=True)
    assert RestartSearch(config, optimization_grid(config)).dimension == 3


def test_optimize_keeps_the_warm_start(config):
    candidate = optimize(config)

    assert candidate.objective > 0
    assert 0 < candidate.ratio < 1
    assert max(trace.objective for trace in candidate.restarts) >= candidate.restarts[0].history[0]
    assert candidate.ratio <= candidate.baseline_ratio + 1e-12
    assert candidate.baseline_ratio == pytest.approx(
        ratio_I(axisymmetric_baseline(3), w_floor(axisymmetric_baseline(3), optimization_grid(config)).w0)
    )
    assert candidate.coeffs.to_coeffs().norm == pytest.approx(1.0)
    assert len(candidate.restarts) == 2
    assert all(np.all(np.diff(trace.history) >= 0) for trace in candidate.restarts)
    assert candidate.verification.status in (VerificationStatus.PASS, VerificationStatus.FAIL)


def test_optimize_starts_from_the_axisymmetric_baseline(config):
    config = config.model_copy(update={'initial': None})
    candidate = optimize(config)
    start = objective(axisymmetric_baseline(3), optimization_grid(config)).value

    assert candidate.restarts[0].history[0] == pytest.approx(start, rel=1e-12)
    assert candidate.ratio <= candidate.baseline_ratio + 1e-12


def test_optimize_is_deterministic(config):
    first = optimize(config).model_dump(mode='json')
    second = optimize(config).model_dump(mode='json')

    assert first == second


def test_config_is_validated():
    with pytest.raises(ValueError):
        OptimizerConfig(lmax=4)

    with pytest.raises(ValueError):
        OptimizerConfig(lmax=5, grid_theta=12)

    with pytest.raises(ValueError):
        OptimizerConfig(lmax=5, unknown=1)


@pytest.mark.slow
def test_converged_candidate_is_a_fixed_point():
    config = OptimizerConfig(lmax=5, restarts=1, max_rounds=20)
    candidate = optimize(config)

    rerun = optimize(config.model_copy(update={'initial': candidate.coeffs}))

    assert rerun.restarts[0].objective <= candidate.restarts[0].objective + config.objective_tolerance * 10


@pytest.mark.slow
def test_candidate_beats_the_rotated_reuleaux_body():
    candidate = optimize(OptimizerConfig(lmax=5, restarts=4))

    reuleaux = profile_to_coeffs(rotated_reuleaux(2.0), 13)
    w0 = w_floor(reuleaux, default_grid(13), refine_levels=2).w0

    assert candidate.ratio < ratio_I(reuleaux, w0) < 1


@pytest.mark.slow
def test_axisymmetric_search_reaches_the_projected_profile():
    profile = profile_to_coeffs(rotated_reuleaux(2.0), 9)
    config = OptimizerConfig(lmax=9, axisymmetric=True, restarts=4)
    candidate = optimize(config)

    target = objective(profile, optimization_grid(config), refine_levels=2).value

    assert all(abs(value) < 1e-12 for (_, m), value in candidate.coeffs.to_coeffs().entries.items() if m != 0)
    assert candidate.objective >= target


@pytest.mark.slow
def test_necessary_condition_scores_at_degree_seven():
    candidate = optimize(OptimizerConfig(lmax=7, restarts=2))
    report = candidate.verification

    assert np.isfinite(report.antipodal_vanishing_score) and np.isfinite(report.k2_deviation)
    assert report.k2_is_smaller == 1.0
    assert 0 < report.smooth_fraction <= 1
    assert report.status == (
        VerificationStatus.PASS
        if max(report.antipodal_vanishing_score, report.k2_deviation) <= report.tolerance
        else VerificationStatus.FAIL
    )

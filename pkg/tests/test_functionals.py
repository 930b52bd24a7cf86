import numpy as np
import pytest

from core.exceptions import InputValidationException
from core.models.coeffs import OddHarmonicCoeffs
from modules.bodies.methods import ball, random_odd
from modules.functionals.methods import (
    area, area_direct, blaschke_residual, cubic_residual, energy, energy_quadrature, evaluate, lemmaH_residual,
    ratio_I, volume, volume_direct
)
from modules.harmonics.methods import build_basis, synth_basis_jet, synth_jet
from modules.sphere_grid.methods import default_grid, integrate
from modules.width_floor.methods import w_floor


def test_ball_exactness():
    report = evaluate(ball(), 1.0, default_grid(3))

    assert report.volume == pytest.approx(4 * np.pi / 3, rel=1e-12)
    assert report.area == pytest.approx(4 * np.pi, rel=1e-12)
    assert report.volume_direct == pytest.approx(4 * np.pi / 3, rel=1e-12)
    assert report.area_direct == pytest.approx(4 * np.pi, rel=1e-12)
    assert report.ratio == 1.0
    assert report.width == 2.0
    assert not report.below_floor


def test_energy_values(cubic):
    translation = OddHarmonicCoeffs.from_entries({(1, 0): 1.0}, 3, include_degree_one=True)

    assert energy(OddHarmonicCoeffs.zeros(5)) == 0.0
    assert energy(translation) == 0.0
    assert energy(cubic) == 5.0
    assert energy_quadrature(synth_jet(cubic, default_grid(3)), default_grid(3)) == pytest.approx(5.0, abs=1e-12)


def test_energy_is_positive_off_degree_one():
    for seed in range(100):
        assert energy(random_odd(7, seed=seed)) > 0


def test_energy_paths_agree(generic):
    grid = default_grid(generic.lmax)
    spectral = energy(generic)

    assert energy_quadrature(synth_jet(generic, grid), grid) == pytest.approx(spectral, abs=1e-10 * (1 + spectral))


def test_volume_of_perturbed_ball(cubic):
    coeffs = 0.05 * cubic
    grid = default_grid(3)

    assert volume(coeffs, 1.0) == pytest.approx(4 * np.pi / 3 - 0.0125, abs=1e-14)
    assert volume_direct(synth_jet(coeffs, grid), 1.0, grid) == pytest.approx(4 * np.pi / 3 - 0.0125, abs=1e-12)


def test_dual_path_volume_and_area(generic):
    grid = default_grid(generic.lmax)
    jet = synth_jet(generic, grid)
    w = 1.2 * w_floor(generic, grid).w0

    assert volume_direct(jet, w, grid) == pytest.approx(volume(generic, w), rel=1e-8)
    assert area_direct(jet, w, grid) == pytest.approx(area(generic, w), rel=1e-8)


def test_blaschke_formula(generic):
    grid = default_grid(generic.lmax)
    w = 1.5 * w_floor(generic, grid).w0
    report = evaluate(generic, w, grid)

    assert report.blaschke_residual <= 1e-10 * (1 + abs(report.volume))
    assert blaschke_residual(volume(generic, w), area(generic, w), w) <= 1e-10 * (1 + abs(report.volume))


def test_ratio_increases_with_width(generic):
    ratios = [ratio_I(generic, w) for w in np.linspace(1.0, 3.0, 9)]

    assert ratio_I(ball(), 1.0) == 1.0
    assert all(later > earlier for earlier, later in zip(ratios, ratios[1:]))


def test_ratio_requires_positive_width(generic):
    with pytest.raises(InputValidationException):
        ratio_I(generic, 0.0)


def test_ratio_is_scale_invariant_at_the_floor(generic):
    grid = default_grid(generic.lmax)
    base = ratio_I(generic, w_floor(generic, grid).w0)

    for scale in (0.5, 2.0, 10.0):
        scaled = scale * generic
        assert ratio_I(scaled, w_floor(scaled, grid).w0) == pytest.approx(base, abs=1e-8)


def test_hessian_identity_for_odd_fields():
    grid = default_grid(7)

    assert lemmaH_residual(synth_jet(OddHarmonicCoeffs.zeros(7), grid), grid) == 0.0

    for seed in range(10):
        jet = synth_jet(random_odd(7, seed=seed), grid)
        assert lemmaH_residual(jet, grid) <= 1e-9 * (1 + integrate(grid, jet.grad_norm2))


def test_hessian_identity_holds_for_even_fields_too():
    grid = default_grid(3)
    basis = build_basis(((2, 0), (2, -1), (2, 2)), grid.theta, grid.phi)
    jet = synth_basis_jet(basis, np.array([0.3, -0.7, 0.2]))

    assert integrate(grid, jet.grad_norm2) > 1
    assert lemmaH_residual(jet, grid) <= 1e-12


def test_cubic_parity_residual_vanishes(generic):
    grid = default_grid(generic.lmax)
    assert cubic_residual(synth_jet(generic, grid), grid) <= 1e-12


def test_below_floor_is_flagged(generic):
    grid = default_grid(generic.lmax)
    w0 = w_floor(generic, grid).w0

    assert evaluate(generic, 0.9 * w0, grid).below_floor
    assert not evaluate(generic, 1.1 * w0, grid).below_floor

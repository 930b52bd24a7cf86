import numpy as np
import pytest

from core.exceptions import GridException
from modules.harmonics.methods import grid_basis
from modules.sphere_grid.methods import antipode, build_grid, default_grid, integrate


def test_two_node_grid_on_the_equator():
    grid = build_grid(1, 2)

    np.testing.assert_allclose(grid.theta, [np.pi / 2, np.pi / 2])
    np.testing.assert_allclose(grid.phi, [0.0, np.pi])
    np.testing.assert_allclose(grid.weights, [2 * np.pi, 2 * np.pi])


def test_weights_sum_to_sphere_area():
    grid = build_grid(16, 32)

    assert np.sum(grid.weights) == pytest.approx(4 * np.pi, abs=1e-12)
    assert integrate(grid, np.ones(grid.size)) == pytest.approx(4 * np.pi, abs=1e-12)


def test_polynomial_integrals_are_exact():
    grid = build_grid(16, 32)
    x, y, z = grid.u.T

    assert integrate(grid, z ** 2) == pytest.approx(4 * np.pi / 3, abs=1e-12)
    assert integrate(grid, x ** 2 * y ** 2) == pytest.approx(4 * np.pi / 15, abs=1e-12)


def test_odd_field_integrates_to_exact_zero(rng):
    grid = build_grid(9, 18)
    z = grid.u[:, 2]

    assert integrate(grid, z ** 3 - 2 * z) == 0.0
    assert integrate(grid, grid.u @ rng.standard_normal(3)) == pytest.approx(0.0, abs=1e-15)


def test_unit_degree_three_harmonic_has_unit_norm():
    grid = default_grid(3)
    basis = grid_basis(grid, 3, False)

    for row in basis.value:
        assert integrate(grid, row ** 2) == pytest.approx(1.0, abs=1e-12)


def test_antipode_is_an_involution_onto_the_opposite_point():
    grid = build_grid(6, 12)
    index = np.arange(grid.size)

    np.testing.assert_array_equal(grid.antipode_index[grid.antipode_index], index)
    np.testing.assert_allclose(np.einsum('ij,ij->i', grid.u, grid.u[grid.antipode_index]), -1.0, atol=1e-14)
    assert antipode(grid, antipode(grid, 5)) == 5


def test_antipode_maps_angles():
    grid = build_grid(7, 8)
    index = 2 * grid.n_phi
    other = antipode(grid, index)

    assert grid.theta[other] == pytest.approx(np.pi - grid.theta[index], abs=1e-14)
    assert grid.phi[other] == pytest.approx(grid.phi[index] + np.pi, abs=1e-14)


def test_band_limit_of_default_grid():
    for lmax in (3, 5, 9):
        assert default_grid(lmax).band_limit >= 2 * lmax


@pytest.mark.parametrize('n_theta, n_phi', [(0, 8), (4, 7), (4, 0)])
def test_invalid_sizes_are_rejected(n_theta, n_phi):
    with pytest.raises(GridException):
        build_grid(n_theta, n_phi)


def test_field_of_wrong_length_is_rejected():
    grid = build_grid(4, 8)

    with pytest.raises(GridException):
        integrate(grid, np.ones(grid.size + 1))

    with pytest.raises(GridException):
        antipode(grid, grid.size)

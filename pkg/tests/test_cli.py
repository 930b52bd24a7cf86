import hashlib

import numpy as np
import orjson
import pytest

from core.models.coeffs import OddHarmonicCoeffs
from main import main
from modules.bodies.methods import random_odd
from modules.sphere_grid.methods import default_grid
from modules.width_floor.methods import w_floor


def read(path) -> dict:
    return orjson.loads(path.read_bytes())


def test_eval_ball(tmp_path, coefficients_file):
    out = tmp_path / 'report.json'

    assert main(['eval', '--coeffs', str(coefficients_file(OddHarmonicCoeffs.zeros(3))), '--w', '1', '--out', str(out)]) == 0

    report = read(out)
    assert report['functionals']['volume'] == pytest.approx(4 * np.pi / 3, rel=1e-12)
    assert report['functionals']['ratio'] == 1.0
    assert report['manifest']['command'] == 'eval'
    assert report['manifest']['grid'] == [8, 16]
    assert len(next(iter(report['manifest']['inputs'].values()))) == 64


def test_eval_at_the_floor(tmp_path, coefficients_file, generic):
    out = tmp_path / 'report.json'

    assert main(['eval', '--coeffs', str(coefficients_file(generic)), '--w', 'floor', '--out', str(out)]) == 0

    report = read(out)
    functionals = report['functionals']

    assert functionals['w'] == report['width_floor']['w0']
    assert functionals['min_density'] >= -1e-8
    assert functionals['blaschke_residual'] <= 1e-10 * (1 + functionals['volume'])
    assert max(abs(value) for value in report['width_floor']['argmax_densities']) <= 1e-8
    assert 'W_field' not in report['width_floor']
    assert report['verification']['status'] in ('PASS', 'FAIL')


def test_eval_rejects_even_degrees(tmp_path):
    path = tmp_path / 'even.json'
    path.write_bytes(orjson.dumps({'lmax': 3, 'entries': [[2, 0, 1.0]]}))

    assert main(['eval', '--coeffs', str(path)]) == 2


def test_eval_rejects_repeated_modes(tmp_path):
    path = tmp_path / 'repeated.json'
    path.write_bytes(orjson.dumps({'lmax': 3, 'entries': [[3, 0, 1.0], [3, 1, 0.5], [3, 0, -1.0]]}))

    assert main(['eval', '--coeffs', str(path)]) == 2


def test_eval_rejects_malformed_files(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"lmax": 3, "entries": [', encoding='utf-8')

    assert main(['eval', '--coeffs', str(path)]) == 2
    assert main(['eval', '--coeffs', str(tmp_path / 'missing.json')]) == 2


def test_usage_errors(coefficients_file, generic):
    path = str(coefficients_file(generic))

    assert main([]) == 1
    assert main(['eval']) == 1
    assert main(['eval', '--coeffs', path, '--w', 'wide']) == 1
    assert main(['eval', '--coeffs', path, '--grid-theta', '16']) == 1


def test_optimize_is_byte_deterministic(tmp_path):
    config = tmp_path / 'config.json'
    config.write_bytes(orjson.dumps({'lmax': 3, 'restarts': 2, 'max_iters': 200, 'max_rounds': 2, 'seed': 7}))

    first, second = tmp_path / 'first.json', tmp_path / 'second.json'

    assert main(['optimize', '--config', str(config), '--out', str(first)]) == 0
    assert main(['optimize', '--config', str(config), '--out', str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()

    candidate = read(first)
    report = read(tmp_path / 'first.report.json')

    assert 0 < candidate['ratio'] < 1
    assert {'antipodal_vanishing_score', 'k2_deviation', 'status'} <= set(candidate['verification'])
    assert report['manifest']['seeds'] == [7]
    assert report['manifest']['outputs'][str(first)] == hashlib.sha256(first.read_bytes()).hexdigest()
    assert len(report['restarts']) == 2


def test_optimize_rejects_invalid_config(tmp_path):
    config = tmp_path / 'config.json'
    config.write_bytes(orjson.dumps({'lmax': 4}))

    assert main(['optimize', '--config', str(config), '--out', str(tmp_path / 'out.json')]) == 2


def test_flow(tmp_path, coefficients_file, generic):
    out = tmp_path / 'flow.json'
    w0 = w_floor(generic, default_grid(generic.lmax)).w0

    assert main([
        'flow', '--coeffs', str(coefficients_file(generic)), '--w-start', str(2 * w0), '--steps', '6', '--out', str(out)
    ]) == 0

    trajectory = read(out)['trajectory']

    assert len(trajectory) == 6
    assert trajectory[-1]['w'] == pytest.approx(w0)
    assert all(later['ratio'] < earlier['ratio'] for earlier, later in zip(trajectory, trajectory[1:]))


def test_export_ball(tmp_path, coefficients_file):
    out = tmp_path / 'ball.obj'

    assert main(['export', '--coeffs', str(coefficients_file(OddHarmonicCoeffs.zeros(3))), '--w', '1', '--out', str(out)]) == 0

    vertices = np.array([
        [float(value) for value in line.split()[1:]]
        for line in out.read_text(encoding='utf-8').splitlines() if line.startswith('v ')
    ])
    report = read(tmp_path / 'ball.report.json')

    assert vertices.shape == (64 * 128 + 2, 3)
    np.testing.assert_allclose(np.linalg.norm(vertices, axis=1), 1.0, atol=1e-10)
    assert report['mesh_volume'] == pytest.approx(4 * np.pi / 3, rel=5e-3)
    assert report['manifest']['outputs'][str(out)]


def test_export_below_the_floor_is_refused(tmp_path, coefficients_file):
    coeffs = random_odd(3, seed=2, scale=0.3)
    w0 = w_floor(coeffs, default_grid(3)).w0

    assert main([
        'export', '--coeffs', str(coefficients_file(coeffs)), '--w', str(w0 / 2), '--out', str(tmp_path / 'body.obj')
    ]) == 2


def test_reference_output_feeds_back_into_eval(tmp_path):
    reference = tmp_path / 'reuleaux.json'
    out = tmp_path / 'report.json'

    assert main(['reference', '--name', 'rotated-reuleaux', '--lmax', '9', '--out', str(reference)]) == 0

    body = read(reference)
    assert body['volume_quad'] == pytest.approx(8 * np.pi * (2 / 3 - np.pi / 6), rel=1e-10)
    assert body['functionals']['ratio'] < 1

    assert main(['eval', '--coeffs', str(reference), '--w', '1', '--out', str(out)]) == 0
    assert read(out)['functionals']['volume'] == pytest.approx(body['functionals']['volume'], rel=1e-12)


def test_reference_rejects_unknown_bodies(tmp_path):
    assert main(['reference', '--name', 'meissner']) == 1


def test_verify(tmp_path):
    out = tmp_path / 'verify.json'

    assert main(['verify', '--seed', '0', '--out', str(out)]) == 0

    report = read(out)
    assert report['passed']
    assert all(check['passed'] for check in report['checks'])

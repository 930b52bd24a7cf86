import numpy as np
from loguru import logger
from scipy.integrate import quad

from core.exceptions import InputValidationException
from core.models.body import AxisymmetricProfile, ProfilePiece
from core.models.coeffs import OddHarmonicCoeffs, odd_modes
from core.objects.pool import executor
from modules.harmonics.methods import project
from modules.sphere_grid.methods import default_grid

PROJECTION_OVERSAMPLING = 4
MONTE_CARLO_CHUNK = 1_000_000


def ball(lmax: int = 3) -> OddHarmonicCoeffs:
    return OddHarmonicCoeffs.zeros(lmax)


def random_odd(lmax: int, seed: int, scale: float = 1.0) -> OddHarmonicCoeffs:
    if lmax < 3 or lmax % 2 == 0:
        raise InputValidationException(f'lmax должен быть нечётным и не меньше 3: {lmax}')

    values = np.random.default_rng(seed).standard_normal(len(odd_modes(lmax)))
    return OddHarmonicCoeffs(lmax, scale * values / np.linalg.norm(values))


def reuleaux_vertices(width: float) -> np.ndarray:
    """Vertices (x, z) of the Reuleaux triangle centred at the origin, one vertex on the +z axis."""

    radius = width / np.sqrt(3)
    angles = np.array([0.0, 2 * np.pi / 3, -2 * np.pi / 3])

    return radius * np.stack((np.sin(angles), np.cos(angles)), axis=1)


def rotated_reuleaux(width: float) -> AxisymmetricProfile:
    if width <= 0:
        raise InputValidationException(f'Ширина должна быть положительной: {width}')

    radius = width / np.sqrt(3)

    return AxisymmetricProfile(
        width=width,
        pieces=(
            ProfilePiece(start=0.0, end=np.pi / 6, radius=radius, center=0.0, offset=0.0),
            ProfilePiece(start=np.pi / 6, end=np.pi / 2, radius=radius, center=-2 * np.pi / 3, offset=width),
            ProfilePiece(start=np.pi / 2, end=5 * np.pi / 6, radius=radius, center=2 * np.pi / 3, offset=0.0),
            ProfilePiece(start=5 * np.pi / 6, end=np.pi, radius=radius, center=0.0, offset=width),
        ),
        vertices=reuleaux_vertices(width)
    )


def profile_to_coeffs(profile: AxisymmetricProfile, lmax: int) -> OddHarmonicCoeffs:
    """Projects support − width/2; the degree-1 part (a translation) is dropped, recentring at the Steiner point."""

    grid = default_grid(lmax, PROJECTION_OVERSAMPLING)
    field = profile.support(grid.theta) - profile.width / 2

    coeffs = project(field, grid, lmax, include_degree_one=True)
    steiner = coeffs.values[coeffs.degrees == 1]

    logger.debug(f'Проекция профиля на lmax={lmax}: смещение точки Штейнера {steiner.tolist()}')

    return coeffs.resized(lmax, include_degree_one=False)


def reuleaux_membership(vertices: np.ndarray, width: float, r: np.ndarray, z: np.ndarray) -> np.ndarray:
    inside = np.ones(np.shape(r), dtype=bool)

    for x0, z0 in vertices:
        inside &= (r - x0) ** 2 + (z - z0) ** 2 <= width ** 2

    return inside


def _count_inside(vertices: np.ndarray, width: float, seed: np.random.SeedSequence, samples: int) -> int:
    rng = np.random.default_rng(seed)
    top = vertices[0, 1]

    r = width / 2 * np.sqrt(rng.random(samples))
    z = top - width * rng.random(samples)

    return int(np.count_nonzero(reuleaux_membership(vertices, width, r, z)))


def monte_carlo_volume(width: float, samples: int = 10 ** 7, seed: int = 0) -> tuple[float, float]:
    """Rejection-sampling volume of the revolved Reuleaux body in its bounding cylinder, with standard error."""

    vertices = reuleaux_vertices(width)
    chunks = [MONTE_CARLO_CHUNK] * (samples // MONTE_CARLO_CHUNK)

    if samples % MONTE_CARLO_CHUNK:
        chunks.append(samples % MONTE_CARLO_CHUNK)

    streams = np.random.SeedSequence(seed).spawn(len(chunks))
    futures = [executor.submit(_count_inside, vertices, width, stream, size) for stream, size in zip(streams, chunks)]

    inside = sum(future.result() for future in futures)
    fraction = inside / samples
    cylinder = np.pi * (width / 2) ** 2 * width

    logger.debug(f'Монте-Карло: {inside} из {samples} точек внутри тела')

    return cylinder * fraction, cylinder * np.sqrt(fraction * (1 - fraction) / samples)


def reuleaux_volume_quad(width: float) -> float:
    """Volume of the revolved Reuleaux body as π∫a(z)²dz over its circular cross-sections."""

    vertices = reuleaux_vertices(width)
    top, bottom = vertices[0, 1], vertices[0, 1] - width

    def half_width(z: float) -> float:
        bounds = [x0 + np.sqrt(max(width ** 2 - (z - z0) ** 2, 0.0)) for x0, z0 in vertices]
        return max(min(bounds), 0.0)

    value, _ = quad(lambda z: np.pi * half_width(z) ** 2, bottom, top, points=[vertices[1, 1]], epsabs=1e-13, epsrel=1e-12)
    return value

import numpy as np

from core.models.geometry import BodyGeometry
from core.models.jet import SupportJet

DEGENERACY_SCALE = 1e-9
DISCRIMINANT_CLAMP = 1e-9


def frame(theta: np.ndarray, phi: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unit normal u and the orthonormal tangent frame (e_θ, e_φ), each shaped (points, 3)."""

    sin_theta, cos_theta = np.sin(theta), np.cos(theta)
    sin_phi, cos_phi = np.sin(phi), np.cos(phi)

    u = np.stack((sin_theta * cos_phi, sin_theta * sin_phi, cos_theta), axis=-1)
    e_theta = np.stack((cos_theta * cos_phi, cos_theta * sin_phi, -sin_theta), axis=-1)
    e_phi = np.stack((-sin_phi, cos_phi, np.zeros_like(phi)), axis=-1)

    return u, e_theta, e_phi


def alpha_beta(jet: SupportJet) -> tuple[np.ndarray, np.ndarray]:
    lap = jet.lap
    return 2 * jet.h + lap, jet.h ** 2 + jet.h * lap + jet.dethess


def area_element(jet: SupportJet, w: float) -> np.ndarray:
    alpha, beta = alpha_beta(jet)
    return w ** 2 + alpha * w + beta


def embed(jet: SupportJet, w: float) -> np.ndarray:
    u, e_theta, e_phi = frame(jet.theta, jet.phi)
    return (jet.h + w)[:, None] * u + jet.grad_theta[:, None] * e_theta + jet.grad_phi[:, None] * e_phi


def curvatures(jet: SupportJet, w: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Principal curvatures k1 ≥ k2, Gauss and mean curvature; NaN where the boundary is singular."""

    alpha, beta = alpha_beta(jet)
    density = w ** 2 + alpha * w + beta
    discriminant = alpha ** 2 - 4 * beta

    threshold = DEGENERACY_SCALE * (w ** 2 + np.abs(alpha) * w + np.abs(beta) + 1)
    defined = (density > threshold) & (discriminant >= -DISCRIMINANT_CLAMP)

    with np.errstate(divide='ignore', invalid='ignore'):
        root = np.sqrt(np.clip(discriminant, 0.0, None))

        k1 = np.where(defined, (2 * w + alpha + root) / (2 * density), np.nan)
        k2 = np.where(defined, (2 * w + alpha - root) / (2 * density), np.nan)
        gauss = np.where(defined, 1 / density, np.nan)
        mean = np.where(defined, (2 * w + alpha) / (2 * density), np.nan)

    return k1, k2, gauss, mean, defined


def body_geometry(jet: SupportJet, w: float) -> BodyGeometry:
    alpha, beta = alpha_beta(jet)
    k1, k2, gauss, mean, defined = curvatures(jet, w)

    return BodyGeometry(
        alpha=alpha,
        beta=beta,
        density=w ** 2 + alpha * w + beta,
        k1=k1,
        k2=k2,
        K=gauss,
        Hmean=mean,
        defined=defined,
        point=embed(jet, w)
    )

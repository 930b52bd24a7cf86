from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class HarmonicBasis:
    """Real harmonics and their raw (θ, φ) partial derivatives, each array shaped (modes, points)."""

    modes: tuple[tuple[int, int], ...]
    theta: np.ndarray
    phi: np.ndarray
    value: np.ndarray
    d_theta: np.ndarray
    d_phi: np.ndarray
    d_theta_theta: np.ndarray
    d_theta_phi: np.ndarray
    d_phi_phi: np.ndarray


@dataclass(frozen=True, eq=False)
class SupportJet:
    """Samples of h with gradient and Hessian in the orthonormal frame {∂_θ, (1/sin θ)∂_φ}."""

    theta: np.ndarray
    phi: np.ndarray
    h: np.ndarray
    grad_theta: np.ndarray
    grad_phi: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    @property
    def lap(self) -> np.ndarray:
        return self.a + self.c

    @property
    def dethess(self) -> np.ndarray:
        return self.a * self.c - self.b ** 2

    @property
    def grad_norm2(self) -> np.ndarray:
        return self.grad_theta ** 2 + self.grad_phi ** 2

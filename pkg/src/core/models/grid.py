from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Gauss–Legendre × uniform-φ product grid; node k sits at row k // n_phi, column k % n_phi."""

    n_theta: int
    n_phi: int
    theta: np.ndarray
    phi: np.ndarray
    u: np.ndarray
    weights: np.ndarray
    antipode_index: np.ndarray
    band_limit: int

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    @cached_property
    def half(self) -> np.ndarray:
        """One representative per antipodal pair."""
        index = np.arange(self.size)
        return index[index < self.antipode_index]

    @cached_property
    def cell(self) -> tuple[float, float]:
        return np.pi / self.n_theta, 2 * np.pi / self.n_phi

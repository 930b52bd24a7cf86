from dataclasses import dataclass

import numpy as np

from core.models.coeffs import OddHarmonicCoeffs


@dataclass(frozen=True, eq=False)
class WidthBody:
    """Body of constant width 2w with support function h + w."""

    coeffs: OddHarmonicCoeffs
    w: float
    w0: float

    @property
    def width(self) -> float:
        return 2 * self.w


@dataclass(frozen=True)
class ProfilePiece:
    start: float
    end: float
    radius: float
    center: float
    offset: float


@dataclass(frozen=True, eq=False)
class AxisymmetricProfile:
    """Support value as a function of the polar angle ψ ∈ [0, π], built from pieces R·cos(ψ − ψ₀) + offset."""

    width: float
    pieces: tuple[ProfilePiece, ...]
    vertices: np.ndarray

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return tuple(piece.start for piece in self.pieces[1:])

    def __piece_index(self, psi: np.ndarray, right: bool) -> np.ndarray:
        starts = np.array([piece.start for piece in self.pieces[1:]])
        return np.searchsorted(starts, psi, side='right' if right else 'left')

    def support(self, psi: np.ndarray | float) -> np.ndarray:
        psi = np.asarray(psi, dtype=float)
        index = self.__piece_index(psi, right=True)

        radius = np.array([piece.radius for piece in self.pieces])[index]
        center = np.array([piece.center for piece in self.pieces])[index]
        offset = np.array([piece.offset for piece in self.pieces])[index]

        return radius * np.cos(psi - center) + offset

    def slope(self, psi: np.ndarray | float, right: bool = True) -> np.ndarray:
        psi = np.asarray(psi, dtype=float)
        index = self.__piece_index(psi, right=right)

        radius = np.array([piece.radius for piece in self.pieces])[index]
        center = np.array([piece.center for piece in self.pieces])[index]

        return -radius * np.sin(psi - center)

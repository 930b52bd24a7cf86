from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from core.exceptions import InputValidationException


@lru_cache(maxsize=64)
def odd_modes(lmax: int, include_degree_one: bool = False) -> tuple[tuple[int, int], ...]:
    start = 1 if include_degree_one else 3
    return tuple((l, m) for l in range(start, lmax + 1, 2) for m in range(-l, l + 1))


@dataclass(frozen=True, eq=False)
class OddHarmonicCoeffs:
    """Odd-degree real spherical-harmonic coefficients of h = s − w, dense in `odd_modes` order."""

    lmax: int
    values: np.ndarray
    include_degree_one: bool = False

    def __post_init__(self):
        if self.lmax < 1 or self.lmax % 2 == 0:
            raise InputValidationException(f'lmax должен быть нечётным: {self.lmax}')

        if self.lmax < 3 and not self.include_degree_one:
            raise InputValidationException('Без гармоник первой степени lmax должен быть не меньше 3')

        values = np.asarray(self.values, dtype=float)

        if values.shape != (len(self.modes),):
            raise InputValidationException(
                f'Ожидалось {len(self.modes)} коэффициентов для lmax={self.lmax}, получено {values.shape}'
            )

        object.__setattr__(self, 'values', values)

    @property
    def modes(self) -> tuple[tuple[int, int], ...]:
        return odd_modes(self.lmax, self.include_degree_one)

    @property
    def entries(self) -> dict[tuple[int, int], float]:
        return {mode: float(value) for mode, value in zip(self.modes, self.values)}

    @property
    def degrees(self) -> np.ndarray:
        return np.array([l for l, _ in self.modes])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    @classmethod
    def zeros(cls, lmax: int, include_degree_one: bool = False) -> 'OddHarmonicCoeffs':
        return cls(lmax, np.zeros(len(odd_modes(lmax, include_degree_one))), include_degree_one)

    @classmethod
    def from_entries(
        cls,
        entries: Mapping[tuple[int, int], float],
        lmax: int,
        include_degree_one: bool = False
    ) -> 'OddHarmonicCoeffs':
        modes = odd_modes(lmax, include_degree_one)
        position = {mode: index for index, mode in enumerate(modes)}
        values = np.zeros(len(modes))

        for (l, m), value in entries.items():
            if l % 2 == 0:
                raise InputValidationException(f'Чётная степень гармоники недопустима: ({l}, {m})')

            if abs(m) > l:
                raise InputValidationException(f'Порядок гармоники вне диапазона: ({l}, {m})')

            if l == 1 and not include_degree_one:
                raise InputValidationException(f'Гармоника первой степени без include_degree_one: ({l}, {m})')

            if l > lmax:
                raise InputValidationException(f'Степень {l} превышает lmax={lmax}')

            values[position[(l, m)]] += value

        return cls(lmax, values, include_degree_one)

    def resized(self, lmax: int, include_degree_one: bool | None = None) -> 'OddHarmonicCoeffs':
        include_degree_one = self.include_degree_one if include_degree_one is None else include_degree_one
        entries = {
            (l, m): value for (l, m), value in self.entries.items()
            if l <= lmax and (l > 1 or include_degree_one)
        }

        return self.from_entries(entries, lmax, include_degree_one)

    def restricted(self, degree: int) -> 'OddHarmonicCoeffs':
        return OddHarmonicCoeffs(self.lmax, np.where(self.degrees == degree, self.values, 0.0), self.include_degree_one)

    def __align(self, other: 'OddHarmonicCoeffs') -> tuple['OddHarmonicCoeffs', 'OddHarmonicCoeffs']:
        lmax = max(self.lmax, other.lmax)
        include_degree_one = self.include_degree_one or other.include_degree_one

        return self.resized(lmax, include_degree_one), other.resized(lmax, include_degree_one)

    def __add__(self, other: 'OddHarmonicCoeffs') -> 'OddHarmonicCoeffs':
        left, right = self.__align(other)
        return OddHarmonicCoeffs(left.lmax, left.values + right.values, left.include_degree_one)

    def __sub__(self, other: 'OddHarmonicCoeffs') -> 'OddHarmonicCoeffs':
        return self + (-1.0) * other

    def __mul__(self, scale: float) -> 'OddHarmonicCoeffs':
        return OddHarmonicCoeffs(self.lmax, scale * self.values, self.include_degree_one)

    __rmul__ = __mul__

    def __neg__(self) -> 'OddHarmonicCoeffs':
        return -1.0 * self

from pathlib import Path
from typing import Callable

import numpy as np
import orjson
import pytest

from core.models.coeffs import OddHarmonicCoeffs
from modules.bodies.methods import random_odd
from modules.harmonics.schemes import CoefficientsFile


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def cubic() -> OddHarmonicCoeffs:
    """Unit axisymmetric degree-3 harmonic."""
    return OddHarmonicCoeffs.from_entries({(3, 0): 1.0}, 3)


@pytest.fixture
def generic() -> OddHarmonicCoeffs:
    return random_odd(5, seed=11, scale=0.3)


@pytest.fixture
def coefficients_file(tmp_path: Path) -> Callable[[OddHarmonicCoeffs, str], Path]:
    def write(coeffs: OddHarmonicCoeffs, name: str = 'coeffs.json') -> Path:
        path = tmp_path / name
        path.write_bytes(orjson.dumps(CoefficientsFile.from_coeffs(coeffs).model_dump(mode='json')))

        return path

    return write

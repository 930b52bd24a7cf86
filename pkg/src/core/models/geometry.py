from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class BodyGeometry:
    alpha: np.ndarray
    beta: np.ndarray
    density: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    K: np.ndarray
    Hmean: np.ndarray
    defined: np.ndarray
    point: np.ndarray

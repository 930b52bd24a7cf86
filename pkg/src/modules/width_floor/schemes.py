from typing import Annotated

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class RefinementStep(BaseModel):
    level: Annotated[int, Field(ge=0)]
    w0: float
    radius_theta: float
    radius_phi: float


class WidthFloorResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    w0: Annotated[float, Field(ge=0)]
    w0_grid: Annotated[float, Field(ge=0)]
    argmax_nodes: list[int]
    argmax_points: list[tuple[float, float]]
    argmax_densities: list[float]
    refinement_record: list[RefinementStep]
    W_field: Annotated[np.ndarray, Field(exclude=True)]

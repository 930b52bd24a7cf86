from typing import Annotated

from pydantic import BaseModel, Field


class FunctionalReport(BaseModel):
    w: Annotated[float, Field(ge=0)]
    width: Annotated[float, Field(ge=0)]
    unit_convention: str = 'width = 2w; h and w share one length unit'

    energy: float
    energy_quadrature: float
    volume: float
    area: float
    ratio: float
    blaschke_residual: float
    lemmaH_residual: float
    cubic_residual: float
    volume_direct: float
    area_direct: float
    min_density: float
    below_floor: bool

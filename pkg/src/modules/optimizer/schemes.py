from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.schemes.body import VerificationStatus
from modules.harmonics.schemes import CoefficientsFile


class OptimizerConfig(BaseModel):
    model_config = ConfigDict(extra='forbid')

    lmax: Annotated[int, Field(ge=3)]
    grid_theta: Annotated[int | None, Field(ge=1)] = None
    grid_phi: Annotated[int | None, Field(ge=2)] = None
    seed: int = 0
    restarts: Annotated[int, Field(ge=1)] = 4
    max_iters: Annotated[int, Field(ge=1)] = 4000
    max_rounds: Annotated[int, Field(ge=1)] = 8
    objective_tolerance: Annotated[float, Field(gt=0)] = 1e-9
    initial_step: Annotated[float, Field(gt=0)] = 0.2
    xatol: Annotated[float, Field(gt=0)] = 1e-9
    soft_max_temperature: Annotated[float, Field(ge=0)] = 0.0
    normalization: Annotated[float, Field(gt=0)] = 1.0
    floor_refine_levels: Annotated[int, Field(ge=0)] = 0
    final_refine_levels: Annotated[int, Field(ge=0)] = 2
    axisymmetric: bool = False
    initial: CoefficientsFile | None = None
    delta_smooth: Annotated[float, Field(gt=0)] = 1e-3
    verification_tolerance: Annotated[float, Field(gt=0)] = 5e-2

    @field_validator('lmax')
    @classmethod
    def check_lmax(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError('lmax должен быть нечётным')

        return value

    @model_validator(mode='after')
    def check_grid(self) -> 'OptimizerConfig':
        if (self.grid_theta is None) != (self.grid_phi is None):
            raise ValueError('grid_theta и grid_phi задаются вместе')

        if self.grid_phi is not None and self.grid_phi % 2 != 0:
            raise ValueError('grid_phi должен быть чётным')

        return self


class VerificationReport(BaseModel):
    w: float
    delta_smooth: float
    tolerance: float
    antipodal_vanishing_score: float
    k2_deviation: float
    k2_is_smaller: float
    smooth_fraction: float
    status: VerificationStatus
    bump_gain: float | None = None
    bump_leakage: float | None = None


class RestartTrace(BaseModel):
    restart: int
    objective: float
    ratio: float
    rounds: int
    iterations: int
    evaluations: int
    history: list[float]


class CandidateBody(BaseModel):
    coeffs: CoefficientsFile
    w0: float
    ratio: float
    objective: float
    axisymmetric: bool
    baseline_ratio: float
    canonical_axis: tuple[float, float, float]
    canonical_coeffs: CoefficientsFile
    verification: VerificationReport
    restarts: list[RestartTrace]


class FlowStep(BaseModel):
    w: float
    ratio: float
    volume: float
    area: float
    volume_direct: float
    min_density: float

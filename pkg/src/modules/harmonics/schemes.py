from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.models.coeffs import OddHarmonicCoeffs


class CoefficientsFile(BaseModel):
    model_config = ConfigDict(extra='ignore')

    lmax: Annotated[int, Field(ge=1)]
    include_degree_one: bool = False
    entries: list[tuple[int, int, float]]

    @field_validator('entries')
    @classmethod
    def check_unique_modes(cls, value: list[tuple[int, int, float]]) -> list[tuple[int, int, float]]:
        seen = set()

        for l, m, _ in value:
            if (l, m) in seen:
                raise ValueError(f'гармоника ({l}, {m}) задана повторно')

            seen.add((l, m))

        return value

    def to_coeffs(self) -> OddHarmonicCoeffs:
        return OddHarmonicCoeffs.from_entries(
            {(l, m): value for l, m, value in self.entries}, self.lmax, self.include_degree_one
        )

    @classmethod
    def from_coeffs(cls, coeffs: OddHarmonicCoeffs) -> 'CoefficientsFile':
        return cls(
            lmax=coeffs.lmax,
            include_degree_one=coeffs.include_degree_one,
            entries=[(l, m, value) for (l, m), value in coeffs.entries.items()]
        )

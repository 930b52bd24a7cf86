from pydantic import BaseModel

from core.schemes.body import Discriminant


class IdentityCheck(BaseModel):
    name: str
    value: float
    threshold: float
    samples: int
    passed: bool


class SuiteReport(BaseModel):
    seed: int
    discriminant: Discriminant
    checks: list[IdentityCheck]
    passed: bool

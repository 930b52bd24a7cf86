from enum import StrEnum


class ReferenceBody(StrEnum):
    BALL = "ball"
    ROTATED_REULEAUX = "rotated-reuleaux"


class VerificationStatus(StrEnum):
    PASS = "PASS"
    FAIL = "FAIL"


class Discriminant(StrEnum):
    EXACT = "EXACT"
    REMARK = "REMARK"

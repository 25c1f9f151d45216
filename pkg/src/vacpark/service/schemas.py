"""Pydantic request/response models for the HTTP API.

Counts travel as decimal strings, never as JSON numbers, so arbitrary
precision survives serialization in every client.
"""

from typing import Literal

from pydantic import BaseModel, Field

RuleName = Literal["classical", "vacillating"]
FilterName = Literal["all", "nondecreasing", "nonincreasing"]
MethodName = Literal["brute", "recurrence", "product", "closed"]
FamilyName = Literal["total", "nondecreasing", "nonincreasing"]


class ServiceInfo(BaseModel):
    name: str
    version: str


class CheckRequest(BaseModel):
    prefs: list[int] = Field(min_length=1)
    rule: RuleName = "vacillating"
    k: int = Field(default=1, ge=1)


class CheckResponse(BaseModel):
    status: Literal["success", "failure"]
    spots: list[int]
    failing_car: int | None = None


class CountRequest(BaseModel):
    n: int = Field(ge=0)
    rule: RuleName = "vacillating"
    k: int = Field(default=1, ge=1)
    method: MethodName = "recurrence"
    filter: FilterName = "all"
    workers: int | None = Field(default=None, ge=1)
    max_n: int | None = Field(default=None, ge=0)


class CountResponse(BaseModel):
    n: int
    rule: RuleName
    k: int | None
    filter: FilterName
    method: MethodName
    count: str
    elapsed_s: float


class EnumerateRequest(BaseModel):
    n: int = Field(ge=0)
    rule: RuleName = "vacillating"
    k: int = Field(default=1, ge=1)
    filter: FilterName = "all"
    limit: int | None = Field(default=None, ge=0)
    workers: int | None = Field(default=None, ge=1)
    max_n: int | None = Field(default=None, ge=0)


class EnumerateRow(BaseModel):
    prefs: list[int]
    spots: list[int]


class VerifyRequest(BaseModel):
    n_brute_max: int = Field(default=7, ge=1)
    n_rec_max: int = Field(default=40, ge=1)
    k_max: int = Field(default=7, ge=1)
    workers: int | None = Field(default=None, ge=1)


class CheckRecord(BaseModel):
    check_id: str
    parameters: dict[str, int]
    expected: str
    actual: str
    passed: bool
    elapsed_s: float


class VerifyResponse(BaseModel):
    overall: bool
    checks: list[CheckRecord]


class InvariantScanRequest(BaseModel):
    n: int = Field(ge=1)
    k: int = Field(default=1, ge=1)
    max_n: int | None = Field(default=None, ge=1)


class InvariantScanResponse(BaseModel):
    n: int
    k: int
    count: int
    members: list[list[int]]


class SequenceRow(BaseModel):
    n: int
    count: str


class SequenceResponse(BaseModel):
    family: FamilyName
    rows: list[SequenceRow]

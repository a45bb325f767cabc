from fractions import Fraction
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

SUITE_NAMES = ("theorem1", "theorem2", "structure", "miki", "subalgebras", "commutative", "dims")

# =========================================================
# PARAMETER SCHEMAS
# =========================================================

class ParamAssignment(BaseModel):
    d: Fraction
    beta: Fraction
    a: List[Fraction] = []

    @field_validator("d")
    @classmethod
    def validate_d(cls, v: Fraction) -> Fraction:
        if v in (0, 1, -1):
            raise ValueError("d must avoid 0 and the roots of unity 1, -1")
        return v

    @field_validator("beta")
    @classmethod
    def validate_beta(cls, v: Fraction) -> Fraction:
        if v == 0:
            raise ValueError("beta must be nonzero")
        return v

    def as_dict(self) -> Dict[str, Fraction]:
        values = {"d": self.d, "beta": self.beta}
        values.update({f"a{i}": v for i, v in enumerate(self.a, start=1)})
        return values


# =========================================================
# SUITE SCHEMAS
# =========================================================

class SuiteConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=1)
    window: int = Field(3, ge=0)
    mode: Literal["exact", "random"] = "exact"
    seed: Optional[int] = None
    points: int = Field(3, ge=1)
    jobs: int = Field(1, ge=1)
    mutation: Optional[str] = None
    specialize: Dict[str, Fraction] = {}

    @model_validator(mode="before")
    @classmethod
    def normalize_seed(cls, data):
        if isinstance(data, dict):
            data = dict(data)
            if data.get("mode", "exact") == "exact":
                data["seed"] = None
            elif data.get("seed") is None:
                data["seed"] = 0
        return data


class FailureRecord(BaseModel):
    family: str
    params: Dict[str, Union[int, str]]
    residual: str


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    suite: str
    n: int
    window: Dict[str, int]
    mode: Literal["exact", "random"]
    seed: Optional[int] = None
    instances: int
    failures: List[FailureRecord] = []
    elapsed_ms: int
    passed: bool = Field(..., alias="pass")
    diagnostics: List[str] = Field(default_factory=list, exclude=True)

    @model_validator(mode="after")
    def check_pass_flag(self):
        if self.passed != (not self.failures):
            raise ValueError("pass must be true exactly when there are no failures")
        return self

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


# =========================================================
# CLI SCHEMAS
# =========================================================

class CliConfigFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: Optional[int] = Field(None, ge=1)
    window: Optional[int] = Field(None, ge=0)
    mode: Optional[Literal["exact", "random"]] = None
    seed: Optional[int] = None
    suites: Optional[List[str]] = None
    out: Optional[str] = None
    points: Optional[int] = Field(None, ge=1)
    jobs: Optional[int] = Field(None, ge=1)

    @field_validator("suites")
    @classmethod
    def validate_suites(cls, v: Optional[List[str]]) -> Optional[List[str]]:
        if v is None:
            return v
        unknown = [name for name in v if name not in SUITE_NAMES and name != "all"]
        if unknown:
            raise ValueError(f"unknown suites: {', '.join(unknown)}")
        return v

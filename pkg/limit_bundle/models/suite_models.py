from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..config import DEFAULT_DIMS, DEFAULT_SEED, DEFAULT_TOL, DEFAULT_TRIALS, MAX_SEED
from ..utils.scalars import ScalarMode

Fault = Literal["none", "drop-coordinate", "sign-flip"]


class SuiteConfig(BaseModel):
    tower: str = "sphere"
    suite: str = "all"
    i_min: int = Field(DEFAULT_DIMS[0], ge=1)
    i_max: int = Field(DEFAULT_DIMS[1], ge=1)
    trials: int = Field(DEFAULT_TRIALS, ge=1)
    seed: int = Field(DEFAULT_SEED, ge=0, lt=MAX_SEED)
    tol: float = Field(DEFAULT_TOL, gt=0)
    mode: Optional[ScalarMode] = None
    format: Literal["text", "json"] = "text"
    fault: Fault = "none"

    model_config = ConfigDict(frozen=True, extra="forbid", use_enum_values=False)

    @field_validator("tower", "suite")
    @classmethod
    def _strip(cls, value: str) -> str:
        return value.strip().lower()

    @model_validator(mode="after")
    def _check_dims(self) -> "SuiteConfig":
        if self.i_min > self.i_max:
            raise ValueError(f"dims range {self.i_min}..{self.i_max} is empty")
        return self

    @property
    def dims(self) -> str:
        return f"{self.i_min}..{self.i_max}"


class CheckRecord(BaseModel):
    id: str
    trials: int = 0
    failures: int = 0
    max_residual: Optional[float] = None
    counterexample: Optional[Dict[str, Any]] = None


class SuiteReport(BaseModel):
    suite: str
    config: SuiteConfig
    checks: List[CheckRecord] = []
    passed: bool = Field(False, alias="pass")
    duration_ms: float = 0.0

    model_config = ConfigDict(populate_by_name=True)

    @property
    def failures(self) -> int:
        return sum(check.failures for check in self.checks)

    def to_json_dict(self) -> Dict[str, Any]:
        """The report in the documented JSON schema (``pass`` key, enums as strings)."""
        return self.model_dump(mode="json", by_alias=True)

from __future__ import annotations

from enum import Enum
from typing import List, Literal, NamedTuple

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

from ..config import ARITY_CAP, MAX_SIZE, TYPE_DEPTH_CAP
from ..kernel.types import TypeExpr
from ..typecheck.context import Calculus, TypingContext


class UsagePolicy(str, Enum):
    ALL_INFINITE = "all-infinite"
    MIXED = "mixed"


class DiagramKind(str, Enum):
    RETRACTION = "Retraction"
    ADM_SIMULATION = "AdmSimulation"
    MONADIC_LIFTING = "MonadicLifting"
    CPS_SIMULATION = "CpsSimulation"
    PI_ROUNDTRIP = "PiRoundtrip"
    TYPING_PRESERVATION = "TypingPreservation"
    TERMINATION = "Termination"
    EMBED_SIMULATION = "EmbedSimulation"


class GenConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: int = Field(default=0, ge=0, lt=2**64)
    max_size: int = Field(default=MAX_SIZE, ge=1)
    calculus: Calculus = Calculus.LAM_PAR
    usage_policy: UsagePolicy = UsagePolicy.ALL_INFINITE
    arity_cap: int = Field(default=ARITY_CAP, ge=1)
    type_depth_cap: int = Field(default=TYPE_DEPTH_CAP, ge=1)

    @field_validator("usage_policy")
    def usages_need_parallel(cls, value: UsagePolicy, info: ValidationInfo) -> UsagePolicy:
        calculus = info.data.get("calculus")
        if value is UsagePolicy.MIXED and calculus is not None and not calculus.is_parallel:
            raise ValueError("mixed usages only exist in the parallel calculi")
        return value


class GeneratedTerm(NamedTuple):
    term: object
    ctx: TypingContext
    ty: TypeExpr


class Pass(NamedTuple):
    depth: int = 0


class CounterExample(NamedTuple):
    reason: str
    trace: tuple[str, ...] = ()


Verdict = Pass | CounterExample


class KindSummary(BaseModel):
    kind: DiagramKind
    passed: int = Field(default=0, ge=0)
    total: int = Field(default=0, ge=0)
    not_applicable: int = Field(default=0, ge=0)
    max_depth_used: int = Field(default=0, ge=0)

    def line(self) -> str:
        return f"{self.kind.value} {self.passed}/{self.total} maxDepthUsed={self.max_depth_used}"


class CounterExampleRecord(BaseModel):
    kind: DiagramKind
    item: int = Field(ge=0)
    seed: int = Field(ge=0)
    term: str
    reason: str
    trace: List[str] = Field(default_factory=list)


class CampaignReport(BaseModel):
    seed: int = Field(ge=0)
    calculus: Calculus
    usage_policy: UsagePolicy
    corpus_size: int = Field(ge=0)
    max_size: int = Field(ge=1)
    status: Literal["PASSED", "FAILED"] = "PASSED"
    kinds: List[KindSummary] = Field(default_factory=list)
    counterexamples: List[CounterExampleRecord] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary_lines(self) -> list[str]:
        return [summary.line() for summary in self.kinds]

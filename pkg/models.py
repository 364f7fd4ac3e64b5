"""Data models for qhyper reports and CLI parameters."""

from pydantic import BaseModel, Field, model_validator
from typing import Optional
from enum import Enum


class Verdict(str, Enum):
    """Outcome of a membership query or theorem check."""
    MEMBER_EXACT = "member_exact"
    MEMBER_SPECIALIZED = "member_specialized"
    NONMEMBER = "nonmember"
    INCONCLUSIVE = "inconclusive"
    EXACT_ZERO = "exact_zero"
    EXACT_NONZERO = "exact_nonzero"

    @property
    def exit_code(self) -> int:
        """Process exit status: 0 verified, 1 refuted, 2 inconclusive."""
        if self in (Verdict.MEMBER_EXACT, Verdict.MEMBER_SPECIALIZED, Verdict.EXACT_ZERO):
            return 0
        if self in (Verdict.NONMEMBER, Verdict.EXACT_NONZERO):
            return 1
        return 2

    @property
    def verified(self) -> bool:
        return self.exit_code == 0


class Mode(str, Enum):
    """Membership arithmetic mode."""
    EXACT = "exact"
    SPECIALIZE = "specialize"


class OutputFormat(str, Enum):
    TEXT = "text"
    LATEX = "latex"
    JSON = "json"


class SpanDims(BaseModel):
    """Sizes of the linear algebra behind a membership verdict."""
    basis_words: int = Field(default=0, ge=0, description="Distinct words met in the span")
    span_rows: int = Field(default=0, ge=0, description="Rows u.r.v generated")
    rank: int = Field(default=0, ge=0, description="Rank of the reduced span")
    element_terms: int = Field(default=0, ge=0, description="Terms in the tested element")


class MembershipReport(BaseModel):
    """Verdict of a bounded-degree ideal-membership query."""
    verdict: Verdict
    mode: Mode
    degree: int = Field(ge=0)
    q0: list[str] = Field(default_factory=list, description="Sampled specialization points")
    witness: Optional[str] = Field(default=None, description="q0 with a nonzero residual")
    reason: Optional[str] = None
    grading: str = "multigraded"
    dims: SpanDims = Field(default_factory=SpanDims)
    seed: int = 0
    millis: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_witness(self):
        if self.verdict == Verdict.NONMEMBER and self.mode == Mode.SPECIALIZE and not self.witness:
            raise ValueError("a specialized nonmember verdict needs a witness q0")
        return self

    def to_json(self) -> dict:
        """Convert to JSON-serializable dictionary."""
        return {
            "verdict": self.verdict.value,
            "mode": self.mode.value,
            "degree": self.degree,
            "q0": self.q0,
            "witness": self.witness,
            "reason": self.reason,
            "grading": self.grading,
            "dims": self.dims.model_dump(),
            "seed": self.seed,
            "millis": self.millis,
        }


class CheckReport(BaseModel):
    """Result of running one registered theorem check."""
    id: str
    anchor: str = ""
    params: dict[str, int | str] = Field(default_factory=dict)
    verdict: Verdict
    mode: str = "exact"
    dims: SpanDims = Field(default_factory=SpanDims)
    seed: int = 0
    millis: int = Field(default=0, ge=0)
    notes: list[str] = Field(default_factory=list)
    parts: dict[str, MembershipReport] = Field(default_factory=dict)

    def to_json(self) -> dict:
        """Convert to JSON-serializable dictionary."""
        return {
            "id": self.id,
            "anchor": self.anchor,
            "params": dict(self.params),
            "verdict": self.verdict.value,
            "mode": self.mode,
            "dims": self.dims.model_dump(),
            "seed": self.seed,
            "millis": self.millis,
            "notes": self.notes,
            "parts": {key: rep.to_json() for key, rep in self.parts.items()},
        }


class CheckInfo(BaseModel):
    """Registry listing entry."""
    id: str
    anchor: str
    description: str
    defaults: dict[str, int | str] = Field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "description": self.description,
            "defaults": dict(self.defaults),
        }


class CliConfig(BaseModel):
    """Validated command-line parameters."""
    command: str
    n: Optional[int] = Field(default=None, ge=1)
    m: Optional[int] = Field(default=None, ge=1)
    k: Optional[int] = Field(default=None, ge=1)
    axis: Optional[int] = Field(default=None, ge=1)
    r: Optional[int] = Field(default=None, ge=0)
    t: Optional[int] = Field(default=None, ge=0)
    split: Optional[int] = Field(default=None, ge=1)
    l: Optional[int] = Field(default=None, ge=1)
    p: Optional[int] = Field(default=None, ge=1)
    kprime: Optional[int] = Field(default=None, ge=1)
    trials: Optional[int] = Field(default=None, ge=1)
    format: OutputFormat = OutputFormat.TEXT
    mode: Optional[Mode] = None
    samples: int = Field(default=3, ge=1)
    seed: int = 0
    max_dim: int = Field(default=200_000, ge=1)
    max_rows: int = Field(default=1_000_000, ge=1)
    threads: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_compatibility(self):
        if self.axis is not None and self.m is not None and self.axis > self.m:
            raise ValueError(f"axis {self.axis} exceeds the number of axes m={self.m}")
        if self.r is not None and self.n is not None and self.command == "minor" and self.r > self.n:
            raise ValueError(f"minor size r={self.r} exceeds n={self.n}")
        if self.t is not None and self.n is not None and self.t > self.n:
            raise ValueError(f"t={self.t} exceeds n={self.n}")
        return self

    def check_params(self) -> dict[str, int | str]:
        """The size parameters that were actually given, for theorem checks."""
        keys = ("n", "m", "k", "axis", "r", "t", "split", "l", "p", "kprime", "trials")
        return {key: getattr(self, key) for key in keys if getattr(self, key) is not None}

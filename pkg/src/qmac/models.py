"""Core data models for qmac.

Enums, configuration, and the JSON document/report schemas. All models use
Pydantic V2 for validation and serialization; the algebraic value types
themselves live in ``qmac.algebra`` and convert to and from these documents.
"""

from __future__ import annotations

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, field_validator

from qmac.constants import (
    DEFAULT_COMPUTE_MAX_N,
    DEFAULT_ENUMERATION_MAX_N,
    DEFAULT_VERIFY_MAX_N,
)

# ──────────────────────────────────────────────
# Enums
# ──────────────────────────────────────────────


class Basis(StrEnum):
    MONOMIAL = "M"
    FUNDAMENTAL = "F"


class FormulaTag(StrEnum):
    DIRECT = "direct"  # packed NAT sum, monomial basis
    FUNDAMENTAL = "fundamental"  # sum over ST(gamma), fundamental basis
    HL_DIRECT = "hl-direct"  # q = 0, sum over ST_0(gamma)
    HL_FUNDAMENTAL = "hl-fundamental"  # q = 0, sum over ST_1(gamma)
    JACK_DIRECT = "jack-direct"  # Jack parameter a, monomial basis
    JACK_FUNDAMENTAL = "jack-fundamental"  # Jack parameter a, fundamental basis

    @property
    def native_basis(self) -> Basis:
        if self in (FormulaTag.DIRECT, FormulaTag.JACK_DIRECT):
            return Basis.MONOMIAL
        return Basis.FUNDAMENTAL

    @property
    def is_hall_littlewood(self) -> bool:
        return self in (FormulaTag.HL_DIRECT, FormulaTag.HL_FUNDAMENTAL)

    @property
    def is_jack(self) -> bool:
        return self in (FormulaTag.JACK_DIRECT, FormulaTag.JACK_FUNDAMENTAL)


class OutputFormat(StrEnum):
    """Renderings of an expansion or truncation (compute, expand)."""

    TEXT = "text"
    JSON = "json"
    LATEX = "latex"


class ReportFormat(StrEnum):
    """Renderings of a compare or verify report."""

    TEXT = "text"
    JSON = "json"
    TABLE = "table"


# ──────────────────────────────────────────────
# Serialized documents
# ──────────────────────────────────────────────


class RatExprDoc(BaseModel):
    """JSON form of a RatExpr.

    ``num`` holds ``[e_q, e_t, e_a, "p/q"]`` terms in canonical order; ``den``
    holds ``[kind, c1, c2, multiplicity]`` factors, with a fifth ``"p/q"``
    entry when a specialized QtBinomial carries a scale other than 1.
    """

    num: list[tuple[int, int, int, str]] = Field(default_factory=list)
    den: list[list[int | str]] = Field(default_factory=list)


class QSymTermDoc(BaseModel):
    subset: list[int]
    composition: list[int]
    coeff: RatExprDoc


class QSymExprDoc(BaseModel):
    degree: int
    basis: Basis
    terms: list[QSymTermDoc] = Field(default_factory=list)


class XPolyTermDoc(BaseModel):
    exponents: list[int]
    coeff: RatExprDoc


class XPolyDoc(BaseModel):
    vars: int
    terms: list[XPolyTermDoc] = Field(default_factory=list)


# ──────────────────────────────────────────────
# Reports
# ──────────────────────────────────────────────


class CoefficientDiff(BaseModel):
    """The first basis element on which two expansions disagree."""

    subset: list[int]
    composition: list[int]
    lhs: str
    rhs: str


class CompareReport(BaseModel):
    gamma: list[int]
    lhs: FormulaTag
    rhs: FormulaTag
    specialization: dict[str, str] = Field(default_factory=dict)
    passed: bool
    terms_compared: int = 0
    first_difference: CoefficientDiff | None = None


class CheckResult(BaseModel):
    """Outcome of one invariant check of the verify suite."""

    name: str
    description: str
    cases: int = 0
    failures: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


class VerifyReport(BaseModel):
    max_n: int
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def total_cases(self) -> int:
        return sum(c.cases for c in self.checks)


# ──────────────────────────────────────────────
# Configuration
# ──────────────────────────────────────────────


class QmacConfig(BaseModel):
    """Configuration loaded from .qmac.yml."""

    model_config = ConfigDict(extra="forbid")

    compute_max_n: int = DEFAULT_COMPUTE_MAX_N  # Guard for compute/compare/expand
    verify_max_n: int = DEFAULT_VERIFY_MAX_N  # Default and cap for verify --max-n
    enumeration_max_n: int = DEFAULT_ENUMERATION_MAX_N  # Hard guard inside enumerators
    threads: int | None = None  # None = min(8, cpu_count)
    output_format: OutputFormat = OutputFormat.TEXT
    lemma_samples: int = 100  # Random multisets for the binomial lemma check
    seed: int = 0
    truncation_max_vars: int = 4
    cache_dir: str | None = None  # Enables the expansion cache when set

    @field_validator("compute_max_n", "verify_max_n", "enumeration_max_n", "truncation_max_vars")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @field_validator("threads")
    @classmethod
    def _threads_positive(cls, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise ValueError("threads must be at least 1")
        return value

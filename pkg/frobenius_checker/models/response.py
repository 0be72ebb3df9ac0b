"""Report models printed by the CLI."""

from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..core.category import Violation
from .verdict import Verdict


class ErrorReport(BaseModel):
    """Error report model."""

    model_config = ConfigDict(frozen=True)

    error: str = Field(..., description="Error type")
    message: str = Field(..., description="Error message")
    details: Optional[Dict[str, Any]] = Field(None, description="Additional error details")
    exit_code: int = Field(2, description="Process exit code")


class ValidationOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: str
    valid: bool
    n_objects: int
    n_morphisms: int
    violations: Tuple[Violation, ...] = ()


class ComponentAnalysis(BaseModel):
    """Structure of one connected component, in parent names and indices."""

    model_config = ConfigDict(frozen=True)

    objects: Tuple[int, ...]
    strongly_connected: bool
    source: Tuple[int, ...] = ()
    rest: Tuple[int, ...] = ()
    systems: Tuple[str, ...] = ()
    cardinalities: Tuple[int, ...] = ()
    group_order: Optional[int] = None
    idempotents: Tuple[str, ...] = ()
    tau: Tuple[Tuple[str, str], ...] = Field((), description="(morphism, τ(morphism)) pairs")
    zero_elements: Tuple[str, ...] = ()


class AnalysisReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: str
    n_objects: int
    n_morphisms: int
    components: Tuple[ComponentAnalysis, ...]


class DecisionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: str
    verdict: Verdict
    certificate_text: str


class CorpusEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    n_objects: int
    n_morphisms: int

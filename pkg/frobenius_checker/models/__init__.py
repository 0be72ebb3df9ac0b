"""Data models for the Frobenius checker."""

from .request import RunConfig
from .response import (
    AnalysisReport,
    ComponentAnalysis,
    CorpusEntry,
    DecisionReport,
    ErrorReport,
    ValidationOutcome,
)
from .verdict import Certificate, RingSpec, Verdict

__all__ = [
    "RunConfig",
    "AnalysisReport",
    "ComponentAnalysis",
    "CorpusEntry",
    "DecisionReport",
    "ErrorReport",
    "ValidationOutcome",
    "Certificate",
    "RingSpec",
    "Verdict",
]

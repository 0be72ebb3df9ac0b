"""Core category machinery, decision procedures and oracles."""

from .category import FinCategory, Morphism, ValidationReport, validate
from .builders import standard_corpus
from .text_format import parse_category, serialize_category
from .generators import generate
from .invariant_system import InvariantSystem, find_is
from .linalg import MatrixFp
from .decision import decide_group, decide_mod, decide_set, invertible
from .set_oracle import SetFunctor, sample_check_set
from .mod_oracle import VectFunctor, sample_check_mod

__all__ = [
    "FinCategory",
    "Morphism",
    "ValidationReport",
    "validate",
    "standard_corpus",
    "parse_category",
    "serialize_category",
    "generate",
    "InvariantSystem",
    "find_is",
    "MatrixFp",
    "decide_group",
    "decide_mod",
    "decide_set",
    "invertible",
    "SetFunctor",
    "sample_check_set",
    "VectFunctor",
    "sample_check_mod",
]

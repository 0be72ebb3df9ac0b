"""
Frobenius Checker - decides whether a finite category is Frobenius relative
to Set and to module categories.

Every verdict carries a certificate, and sampled limit/colimit oracles over
finite sets and F_p-vector spaces check verdicts against brute force.
"""

__version__ = "1.0.0"

from .core import FinCategory, decide_mod, decide_set, sample_check_mod, sample_check_set
from .models import RingSpec, Verdict

__all__ = [
    "FinCategory",
    "decide_mod",
    "decide_set",
    "sample_check_mod",
    "sample_check_set",
    "RingSpec",
    "Verdict",
]

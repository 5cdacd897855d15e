"""Trace analysis, closure, and the classification decision tree."""

from .closure import ExceedsCap, FiniteClosure, finite_closure, is_closed, klein_type
from .decide import ClassifyOptions, classify, classify_matrices, condition_A, condition_B, dense_criteria, word_candidates
from .report import Certificate, ClassificationReport
from .trace import TraceInterval, char_poly, phi_for_trace_target, solve_phi_for_trace, trace_formula, trace_interval, trace_quadratic
from .verify import Verification, verify_certificate

__all__ = [
    "Certificate",
    "ClassificationReport",
    "ClassifyOptions",
    "ExceedsCap",
    "FiniteClosure",
    "TraceInterval",
    "Verification",
    "char_poly",
    "classify",
    "classify_matrices",
    "condition_A",
    "condition_B",
    "dense_criteria",
    "finite_closure",
    "is_closed",
    "klein_type",
    "phi_for_trace_target",
    "solve_phi_for_trace",
    "trace_formula",
    "trace_interval",
    "trace_quadratic",
    "verify_certificate",
    "word_candidates",
]

"""Braid compiler for SU(2)_k anyons (k = 3, 5, 6, 7)."""
from .anyon_model import AnyonModel, ModelError, verify_consistency
from .braid_generators import Braidword, GeneratorToken, evaluate, letter_matrices
from .gate_metrics import (
    TwoQubitReport,
    block_decompose,
    d_cnot,
    makhlin_invariants,
    phase_invariant_distance,
    unitarity_measure,
)
from .search_engines import CompilationResult, GAConfig, SearchConfig, brute_force_search, ga_search
from .sk_compiler import SKAConfig, SKAResult, gc_decompose, ska_approximate, to_su2

__all__ = [
    "AnyonModel", "ModelError", "verify_consistency",
    "Braidword", "GeneratorToken", "evaluate", "letter_matrices",
    "TwoQubitReport", "block_decompose", "d_cnot", "makhlin_invariants",
    "phase_invariant_distance", "unitarity_measure",
    "CompilationResult", "GAConfig", "SearchConfig", "brute_force_search", "ga_search",
    "SKAConfig", "SKAResult", "gc_decompose", "ska_approximate", "to_su2",
]

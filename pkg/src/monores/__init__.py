"""Random monomial ideals: sampling, resolutions, Scarf complexes, thresholds."""

from .errors import GuardError, ParseError, UsageError
from .kernels import BACKEND
from .linalg import QQ, CoefficientField
from .monomial import (Monomial, MonomialIdeal, count_monomials, divides, enumerate_monomials,
                       format_ideal, gcd, is_dominant_set, krull_dimension, lcm, minimalize,
                       parse_ideal, read_ideal, strongly_divides)
from .resolution import (BettiTable, TaylorStrand, betti_table, is_cohen_macaulay, lcm_closure,
                         projective_dimension, taylor_strands)
from .sampler import ModelParams, derive_seed, sample_ideal
from .scarf import (ScarfComplex, WitnessReport, find_witness_sets, is_generic, is_scarf,
                    is_strongly_generic, scarf_complex)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BettiTable", "CoefficientField", "GuardError", "ModelParams", "Monomial",
    "MonomialIdeal", "ParseError", "QQ", "ScarfComplex", "TaylorStrand", "UsageError",
    "WitnessReport", "betti_table", "count_monomials", "derive_seed", "divides",
    "enumerate_monomials", "find_witness_sets", "format_ideal", "gcd", "is_cohen_macaulay",
    "is_dominant_set", "is_generic", "is_scarf", "is_strongly_generic", "krull_dimension", "lcm",
    "lcm_closure", "minimalize", "parse_ideal", "projective_dimension", "read_ideal",
    "sample_ideal", "scarf_complex", "strongly_divides", "taylor_strands",
]

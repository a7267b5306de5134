"""Exact construction of extremal approximation points on rational conics."""

from .numerics import CertifiedReal, Dyadic, certified_round, interval_sqrt
from .quadform import (
    CanonicalReduction,
    TernaryQuadraticForm,
    apply_gl3,
    bilinear,
    eval_form,
    kernel,
    psi,
    rational_zero,
    reduce_form,
)
from .pell import PellSolution, cf_expansion, find_seed_pair, fundamental_solution, next_solution
from .extremal import (
    CertifiedVec3,
    ExtremalSequence,
    extend,
    limit_point,
    seed_triple,
    tails_equal,
)
from .minpoints import (
    ExponentReport,
    MinimalPointRecord,
    enumerate_minimal,
    estimate_lambda,
    independence_indices,
    projective_distance,
    rigidity_check,
)
from .targets import ExtremalTarget, RationalTarget, SqrtPairTarget

__all__ = [
    "CanonicalReduction",
    "CertifiedReal",
    "CertifiedVec3",
    "Dyadic",
    "ExponentReport",
    "ExtremalSequence",
    "ExtremalTarget",
    "MinimalPointRecord",
    "PellSolution",
    "RationalTarget",
    "SqrtPairTarget",
    "TernaryQuadraticForm",
    "apply_gl3",
    "bilinear",
    "certified_round",
    "cf_expansion",
    "enumerate_minimal",
    "estimate_lambda",
    "eval_form",
    "extend",
    "find_seed_pair",
    "fundamental_solution",
    "independence_indices",
    "interval_sqrt",
    "kernel",
    "limit_point",
    "next_solution",
    "projective_distance",
    "psi",
    "rational_zero",
    "reduce_form",
    "rigidity_check",
    "seed_triple",
    "tails_equal",
]

__version__ = "0.1.0"

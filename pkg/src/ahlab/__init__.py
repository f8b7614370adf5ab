"""Hilbert functions of fat points, double-point classification and secant dimensions."""

from .classifier import (
    AHVerdict,
    Certificate,
    build_certificate,
    certificate_d2,
    certificate_d3n4,
    certificate_d4,
    predicted_classification,
    sweep,
    verify_ah,
)
from .configurations import (
    FatPoint,
    FatPointConfig,
    HyperplaneData,
    coordinate_points,
    random_general,
    random_on_hyperplane,
    rational_normal_curve_points,
    union,
)
from .fields import DEFAULT_FIELD, QQ, PrimeField, RationalField, binomial, falling_factorial
from .induction import build_tree, check_tree, horace_split, lemma_numeric_check, reproduce_tables, terracini_gate
from .interpolation import build_matrix, castelnuovo_check, hilbert_function, hyperplane_condition, ideal_slice, multiplicity
from .secant import secant_dimension, terracini_span_rank, veronese_embed, waring_G

__version__ = "0.1.0"

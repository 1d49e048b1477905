"""Exact algebra for multivariate subdivision masks with dilation 2I.

Sparse Laurent polynomials over the rationals, box-spline generators of
the powers of the zero-set ideal, sum-rule checks, ideal-membership
decompositions, difference-scheme convergence certificates and the
refinement recursion.
"""

from .boxspline import (
    MODIFIED,
    STANDARD,
    DirectionMatrix,
    GeneratorLabel,
    GeneratorSet,
    Submatrix,
    box_symbol,
    direction_matrix,
    expand_4dir_to_3dir,
    generator_q,
    generator_set,
    generator_set_Ik,
    max_sumrule_order,
    minimality_witness,
    smoothness_kappa,
    unimodular_submatrices,
)
from .catalog import SchemeEntry, get_scheme, list_schemes
from .convergence import (
    ConvergenceCertificate,
    DataGrid,
    MatrixLaurent,
    certify_convergence,
    difference_scheme,
    iterated_symbol,
    operator_norm_inf,
    subdivide,
)
from .decompose import (
    Decomposition,
    PreconditionError,
    SolverIncomplete,
    decompose,
    normalize_affine,
    verify_decomposition,
)
from .laurent import LaurentPoly, divide
from .mask import Mask, MaskFormatError
from .sumrules import check_Zk, sumrule_order, zero_set

__version__ = "0.1.0"

__all__ = [
    "MODIFIED", "STANDARD", "ConvergenceCertificate", "DataGrid", "Decomposition", "DirectionMatrix",
    "GeneratorLabel", "GeneratorSet", "LaurentPoly", "Mask", "MaskFormatError", "MatrixLaurent",
    "PreconditionError", "SchemeEntry", "SolverIncomplete", "Submatrix", "box_symbol", "certify_convergence",
    "check_Zk", "decompose", "difference_scheme", "direction_matrix", "divide", "expand_4dir_to_3dir",
    "generator_q", "generator_set", "generator_set_Ik", "get_scheme", "iterated_symbol", "list_schemes",
    "max_sumrule_order", "minimality_witness", "normalize_affine", "operator_norm_inf", "smoothness_kappa",
    "subdivide", "sumrule_order", "unimodular_submatrices", "verify_decomposition", "zero_set",
]

"""cuspidal-shadow: Exact shadows of cuspidal modules for simply-laced quantum affine algebras."""

from .affine import (
    CuspLine,
    CuspParam,
    DatumReport,
    Order,
    ShadowClass,
    bilex_compare,
    cuspidal_line,
    delta_fund,
    denominator_table,
    standard_descriptor,
    strong_datum_check,
    unmixed_check,
)
from .basis_cache import BasisCache, make_basis_cache
from .config import RunConfig
from .exceptions import (
    ConfigurationError,
    CuspidalShadowError,
    DomainError,
    InvalidWordError,
    InvariantViolation,
    RangeError,
    UnsupportedFeatureError,
)
from .gbasis import GlobalBasis, GlobalBasisElt, dual_canonical_at_weight, expand_in_dual_canonical
from .invariants import PairCalculator, PairInvariants, commutes, delta_pair, lambda_pair
from .laurent import LaurentPoly
from .liecore import CartanDatum, ConvexSeq, beta_sequence, enumerate_reduced_words, root_system
from .pbw import PbwBasis, dual_pbw_monomial, dual_root_vector, expand_in_pbw
from .qdata import ARQuiver, DynkinQuiver, QData, VertexLabel, adapted_word, ar_quiver, height_functions
from .reports import SweepResult, VerifySummary
from .shuffle import ShuffleAlgebra, ShuffleElt

__version__ = "0.1.0"
__all__ = [
    "ARQuiver",
    "BasisCache",
    "CartanDatum",
    "ConfigurationError",
    "ConvexSeq",
    "CuspLine",
    "CuspParam",
    "CuspidalShadowError",
    "DatumReport",
    "DomainError",
    "DynkinQuiver",
    "GlobalBasis",
    "GlobalBasisElt",
    "InvalidWordError",
    "InvariantViolation",
    "LaurentPoly",
    "Order",
    "PairCalculator",
    "PairInvariants",
    "PbwBasis",
    "QData",
    "RangeError",
    "RunConfig",
    "ShadowClass",
    "ShuffleAlgebra",
    "ShuffleElt",
    "SweepResult",
    "UnsupportedFeatureError",
    "VerifySummary",
    "VertexLabel",
    "adapted_word",
    "ar_quiver",
    "beta_sequence",
    "bilex_compare",
    "commutes",
    "cuspidal_line",
    "delta_fund",
    "delta_pair",
    "denominator_table",
    "dual_canonical_at_weight",
    "dual_pbw_monomial",
    "dual_root_vector",
    "enumerate_reduced_words",
    "expand_in_dual_canonical",
    "expand_in_pbw",
    "height_functions",
    "lambda_pair",
    "make_basis_cache",
    "root_system",
    "standard_descriptor",
    "strong_datum_check",
    "unmixed_check",
]

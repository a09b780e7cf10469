"""Linear representations of point sets at infinity in AG(n, q) and their LDPC codes."""
from .codes import Codeword, code_dims, is_codeword, min_weight, verify_spanning
from .geometry import GeomConfig, count_h_k, dual_zero_count, rank_formula
from .gf import Field, field_create
from .incidence import SparseIncidence, build_incidence
from .ksets import KSet, build_kset
from .linalg import rank, rank_char0, rank_mod

__all__ = [
    "Codeword", "Field", "GeomConfig", "KSet", "SparseIncidence",
    "build_incidence", "build_kset", "code_dims", "count_h_k", "dual_zero_count",
    "field_create", "is_codeword", "min_weight", "rank", "rank_char0",
    "rank_formula", "rank_mod", "verify_spanning",
]

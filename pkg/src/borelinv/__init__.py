"""Volume cocycle on complete-flag quadruples and triangulation invariants.

The package computes the alternating, bounded cocycle that extends the
signed ideal-tetrahedron volume from boundary points of hyperbolic
3-space to quadruples of complete flags in ``C^n``, evaluates the induced
invariant of decorated ideal triangulations, and ships seeded verification
suites for the structural identities (cocycle relation, boundedness,
Veronese maximality).
"""

from .linalg import Matrix, QQi, Subspace, rank, rref, set_default_tol
from .volume import V3, ExtComplex, ProjPoint, cross_ratio, dilog_bw, ideal_volume
from .configs import (Chain, Config, boundary, compositions, eval_chain,
                      face_epsilon, face_eta, make_config, vol3)
from .flags import (Flag, b3_projective_oracle, big_t, borel_bn,
                    is_general_position, maximal_completion, normalize_triple,
                    t_multi)
from .veronese import reduce_flag, sym_power, veronese_flag
from .triangulation import (DecoratedComplex, borel_invariant, lift_veronese,
                            load, maximality_ratio)

__version__ = "0.1.0"

__all__ = [
    "Matrix", "QQi", "Subspace", "rank", "rref", "set_default_tol",
    "V3", "ExtComplex", "ProjPoint", "cross_ratio", "dilog_bw", "ideal_volume",
    "Chain", "Config", "boundary", "compositions", "eval_chain",
    "face_epsilon", "face_eta", "make_config", "vol3",
    "Flag", "b3_projective_oracle", "big_t", "borel_bn",
    "is_general_position", "maximal_completion", "normalize_triple", "t_multi",
    "reduce_flag", "sym_power", "veronese_flag",
    "DecoratedComplex", "borel_invariant", "lift_veronese", "load",
    "maximality_ratio",
]

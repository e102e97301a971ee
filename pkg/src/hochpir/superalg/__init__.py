"""Graded Lie superalgebras and their enveloping Hopf algebras."""
from .hopf import HopfBackend, PBWHopf, TensorHopf
from .lie import (FreeLieAlgebra, LieBasisElement, StructureLieAlgebra, abelian_lie,
                  is_lyndon, standard_factorization)
from .pbw import hodge_parts, pbw_decompose, pbw_map, sym_monomials, sym_product
from .signs import koszul_sign, reversal_sign

__all__ = [
    "HopfBackend", "PBWHopf", "TensorHopf", "FreeLieAlgebra", "LieBasisElement",
    "StructureLieAlgebra", "abelian_lie", "is_lyndon", "standard_factorization",
    "hodge_parts", "pbw_decompose", "pbw_map", "sym_monomials", "sym_product",
    "koszul_sign", "reversal_sign",
]

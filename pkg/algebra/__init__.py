"""Exact noncommutative algebra: q-series, free polynomials, quantum matrices, hyperdeterminants, hyper-Pfaffians."""

from .qseries import LaurentV, RationalFn, qbinom, qfact, qnum
from .ncalg import GenId, NCPoly, Perm, RelationSet
from .qmatrix import QMatrixContext, det_q_col, det_q_row, matq_relations, normal_form
from .hyperalg import HyperAlgebra, HyperShape, hyperdet_fixed, hyperdet_normalized, hyperdet_unnormalized, relations
from .pfaffian import BlockIndex, PfShape, hypf_relations, pf_full, pf_prime, pf_recursive

__all__ = [
    "LaurentV", "RationalFn", "qbinom", "qfact", "qnum",
    "GenId", "NCPoly", "Perm", "RelationSet",
    "QMatrixContext", "det_q_col", "det_q_row", "matq_relations", "normal_form",
    "HyperAlgebra", "HyperShape", "hyperdet_fixed", "hyperdet_normalized", "hyperdet_unnormalized", "relations",
    "BlockIndex", "PfShape", "hypf_relations", "pf_full", "pf_prime", "pf_recursive",
]

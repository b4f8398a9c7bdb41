"""Exact computations for isometries of even unimodular lattices and for
equivariant Witt groups of bilinear forms with a Z-action."""

from .equiwitt import FqForm, is_neutral, witt_equal
from .gate import check_conditions, k3_check, signature_targets
from .poly import IntPoly, LEHMER, cyclotomic
from .qform import QuadForm
from .realize import construct, feasibility_report, gm_lambda
from .reduction import boundary, unimodular_witness
from .twoadic import even_criterion, spinor_norm
from .zlattice import GLattice

__all__ = [
    "FqForm", "GLattice", "IntPoly", "LEHMER", "QuadForm", "boundary", "check_conditions",
    "construct", "cyclotomic", "even_criterion", "feasibility_report", "gm_lambda",
    "is_neutral", "k3_check", "signature_targets", "spinor_norm", "unimodular_witness",
    "witt_equal",
]

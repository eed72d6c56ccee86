"""Checks for the smooth threefolds X = (C1 x C2 x C3) / (Z/2)^4 with canonical map of degree 96."""

from .gf2core import PAPER_A, Gf2Mat4, check_admissible, element_order, enumerate_admissible, mat_mul
from .covering import BranchData, CurveParams, chevalley_weil_dim, genus, section_character
from .invariants import (
    HodgeRecord,
    TwistedProduct,
    degree_budget,
    euler_and_K3,
    hodge_numbers,
    invariant_canonical_monomials,
    is_free,
)

__version__ = "0.1.0"

from .localized import ConstraintSet, RatFun
from .mpoly import VARIABLES, MPoly, parse, variables
from .relation import (
    ParamPoint,
    QuadricRelation,
    RankResult,
    RelationMatrix,
    build_relation_matrix,
    generic_rank,
    nullspace_at,
    rank_at,
    residual_polynomials,
    residuals_4eq,
)

"""Exact invariants and certificates for simple cyclic covers of the plane
w^d + f(x, y, z) = 0 in P(1, 1, 1, m)."""

from .algebra import (
    DEFAULT_PRIME,
    QuadExt,
    RankMatrix,
    SparsePoly,
    WeightSystem,
    monomials_of_degree,
    quad_compare,
    rank_mod_p,
)
from .milnor import CoverDatum, HodgeTriple, MilnorData, dim_R, dim_S, dim_T, hodge_numbers
from .picard import (
    SurjectivityCertificate,
    picard_rank_one_witness,
    r_level_surjective,
    summand_condition,
    t_level_surjective,
)
from .seshadri import SeshadriReport, bauer_degree_bound, seshadri_interval

__version__ = "0.1.0"

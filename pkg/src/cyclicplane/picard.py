"""Picard rank one certificates for very general simple cyclic covers.

The criterion is surjectivity of H^1(Theta)_0 (x) H^{2,0} -> H^{1,1}, i.e. of
R_{dm} (x) R_{dm-m-3} -> R_{2dm-m-3}.  It is checked twice: structurally on
T = S/(w^(d-1)) with S'_{md} in place of R_{dm}, and for a concrete f on R.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    DEFAULT_PRIME,
    RankMatrix,
    check_prime,
    monomials_of_degree,
    plane_monomials,
    rank_mod_p,
)
from .milnor import (
    CoverDatum,
    MilnorData,
    ideal_matrix,
    milnor_hilbert_series_coeff,
    quotient_basis,
    random_branch_poly,
    smoothness_heuristic,
)

SURJECTIVE = "surjective"
NOT_SURJECTIVE = "not-surjective-mod-p"
VACUOUS = "vacuous"

SEMICONTINUITY_NOTE = (
    "surjectivity for this f implies surjectivity for very general f by "
    "semicontinuity of rank; it says nothing about every f"
)


class HypothesisError(ValueError):
    """Raised when (d, m) lies outside the range where the criterion applies."""


@dataclass(frozen=True)
class SurjectivityCertificate:
    label: str
    source_dim: int
    target_dim: int
    rank: int
    prime: int | str
    seed: int | None = None
    verdict: str = field(init=False)

    def __post_init__(self):
        if self.rank > min(self.source_dim, self.target_dim):
            raise AssertionError("rank exceeds the dimensions of the map")
        if self.target_dim == 0 and self.source_dim == 0:
            v = VACUOUS
        else:
            v = SURJECTIVE if self.rank == self.target_dim else NOT_SURJECTIVE
        object.__setattr__(self, "verdict", v)

    @classmethod
    def vacuous(cls, label: str, prime, seed=None) -> SurjectivityCertificate:
        return cls(label, 0, 0, 0, prime, seed)

    @property
    def surjective(self) -> bool:
        return self.verdict == SURJECTIVE

    def to_json(self) -> dict:
        return {
            "map": self.label,
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "rank": self.rank,
            "prime": self.prime,
            "seed": self.seed,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class SummandCondition:
    holds: bool
    lhs: int  # md - m - 3
    rhs: int  # m(d - 2)

    def __bool__(self):
        return self.holds


def summand_condition(cover: CoverDatum) -> SummandCondition:
    """Whether every summand w^i S'_{k-im} of T_k is nonzero at k = md - m - 3."""
    lhs = cover.h20_degree
    rhs = cover.m * (cover.d - 2)
    holds = lhs >= rhs
    # md - m - 3 >= m(d - 2)  <=>  m >= 3
    assert holds == (cover.m >= 3)
    return SummandCondition(holds, lhs, rhs)


def _product_certificate(label, left, right, target, keep, prime, seed=None, extra=None):
    """Rank of span{a*b} (+ extra columns) inside the span of ``target``.

    ``extra`` is a RankMatrix of ideal columns to quotient by; the achieved
    rank is then rank([ideal | products]) - rank(ideal).
    """
    index = {e: i for i, e in enumerate(target)}
    products = {tuple(x + y for x, y in zip(a, b)) for a in left for b in right}
    columns = [{index[e]: 1} for e in sorted(products, reverse=True) if keep(e)]
    base_rank = 0
    ideal_cols: list[dict] = []
    if extra is not None:
        ideal_cols = [{} for _ in range(extra.cols)]
        for r, c, v in extra.entries:
            ideal_cols[c][r] = v
        base_rank = rank_mod_p(extra)
    mat = RankMatrix.from_columns(len(target), ideal_cols + columns, prime)
    achieved = rank_mod_p(mat) - base_rank
    return SurjectivityCertificate(
        label, len(left) * len(right), len(target) - base_rank, achieved, prime, seed
    )


def t_level_surjective(cover: CoverDatum, p: int = DEFAULT_PRIME) -> SurjectivityCertificate:
    """S'_{md} (x) T_{md-m-3} -> T_{2md-m-3}, products with w^(d-1) dropped."""
    check_prime(p)
    k = cover.h20_degree
    if k < 0:
        return SurjectivityCertificate.vacuous("T-level", p)
    dm = cover.d - 1
    in_T = lambda e: e[3] < dm  # noqa: E731
    left = plane_monomials(cover.branch_degree)
    right = [e for e in monomials_of_degree(cover.ws, k) if in_T(e)]
    target = [e for e in monomials_of_degree(cover.ws, cover.h11_degree) if in_T(e)]
    return _product_certificate("T-level", left, right, target, in_T, p)


def r_level_surjective(md: MilnorData, p: int = DEFAULT_PRIME,
                       seed: int | None = None) -> SurjectivityCertificate:
    """R_{dm} (x) R_{dm-m-3} -> R_{2dm-m-3} for the given f, rank mod p.

    Both factors are lifted to monomial bases (see ``quotient_basis``); their
    products are reduced into R_{2dm-m-3} by quotienting by the ideal.
    """
    check_prime(p)
    cover = md.cover
    if cover.h20_degree < 0:
        return SurjectivityCertificate.vacuous("R-level", p, seed)
    left = quotient_basis(md, cover.theta_degree, p)
    right = quotient_basis(md, cover.h20_degree, p)
    target, ideal = ideal_matrix(md, cover.h11_degree, p)
    return _product_certificate("R-level", left, right, target, lambda e: True, p, seed, ideal)


def dC_multiple_class(cover: CoverDatum, LC: int) -> tuple[Fraction, bool]:
    """Class k with dC in |kL|: k L^2 = dC.L = d (L.C) and L^2 = d, so k = L.C."""
    if LC <= 0:
        raise ValueError(f"L.C must be positive, got {LC}")
    Lsq = cover.branch_degree // cover.m
    k = Fraction(cover.d * LC, Lsq)
    return k, k.denominator == 1


@dataclass
class WitnessReport:
    cover: CoverDatum
    seed: int
    prime: int
    smoothness: dict
    summand: SummandCondition
    t_level: SurjectivityCertificate
    r_level: SurjectivityCertificate
    series_match: bool
    cross_checks: list[dict] = field(default_factory=list)

    @property
    def positive(self) -> bool:
        return (
            self.smoothness["result"] == "heuristic-pass"
            and self.summand.holds
            and self.t_level.surjective
            and self.r_level.surjective
            and self.series_match
            and all(c["r_level"]["verdict"] == SURJECTIVE for c in self.cross_checks)
        )

    @property
    def verdict(self) -> str:
        if self.positive:
            return "Picard-rank-1 criterion verified for this f"
        return "not verified for this f (resample)"

    def to_json(self) -> dict:
        return {
            "d": self.cover.d,
            "m": self.cover.m,
            "seed": self.seed,
            "prime": self.prime,
            "smoothness": self.smoothness["result"],
            "smoothness_detail": self.smoothness,
            "summand": self.summand.holds,
            "summand_sides": [self.summand.lhs, self.summand.rhs],
            "t_level": self.t_level.to_json(),
            "r_level": self.r_level.to_json(),
            "series_match": self.series_match,
            "cross_checks": self.cross_checks,
            "verdict": self.verdict,
            "positive": self.positive,
            "note": SEMICONTINUITY_NOTE,
        }


def picard_rank_one_witness(cover: CoverDatum, seed: int = 1, p: int = DEFAULT_PRIME,
                            cross_prime: int | None = None) -> WitnessReport:
    """Sample f, then run every certificate of the Picard rank one criterion."""
    check_prime(p)
    summand = summand_condition(cover)
    if not summand:
        raise HypothesisError(
            f"m >= 3 required for the Picard rank one criterion (d={cover.d}, m={cover.m}); "
            f"summand condition fails: {summand.lhs} < {summand.rhs}"
        )
    f = random_branch_poly(cover, seed)
    md = MilnorData(cover, f)
    smooth = smoothness_heuristic(f, seed=seed).to_json()
    t_cert = t_level_surjective(cover, p)
    r_cert = r_level_surjective(md, p, seed)
    expected_target = milnor_hilbert_series_coeff(cover.h11_degree, cover)
    series_match = r_cert.target_dim == expected_target and r_cert.source_dim == (
        milnor_hilbert_series_coeff(cover.theta_degree, cover)
        * milnor_hilbert_series_coeff(cover.h20_degree, cover)
    )
    cross = []
    if cross_prime is not None:
        check_prime(cross_prime)
        cross.append({
            "prime": cross_prime,
            "t_level": t_level_surjective(cover, cross_prime).to_json(),
            "r_level": r_level_surjective(md, cross_prime, seed).to_json(),
        })
    return WitnessReport(cover, seed, p, smooth, summand, t_cert, r_cert, series_match, cross)

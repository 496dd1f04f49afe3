from fractions import Fraction

import pytest

from cyclicplane.algebra import monomials_of_degree, plane_monomials
from cyclicplane.milnor import (
    CoverDatum,
    MilnorData,
    dim_T,
    fermat_poly,
    milnor_hilbert_series_coeff,
    random_branch_poly,
)
from cyclicplane.picard import (
    SURJECTIVE,
    HypothesisError,
    SurjectivityCertificate,
    dC_multiple_class,
    picard_rank_one_witness,
    r_level_surjective,
    summand_condition,
    t_level_surjective,
)


class TestSummandCondition:
    def test_k3(self):
        s = summand_condition(CoverDatum(2, 3))
        assert s.holds and (s.lhs, s.rhs) == (0, 0)

    def test_quintuple_m2(self):
        s = summand_condition(CoverDatum(5, 2))
        assert not s.holds and (s.lhs, s.rhs) == (5, 6)

    def test_double_m2(self):
        s = summand_condition(CoverDatum(2, 2))
        assert not s.holds and (s.lhs, s.rhs) == (-1, 0)

    def test_exhaustive(self):
        for d in range(2, 11):
            for m in range(1, 11):
                assert bool(summand_condition(CoverDatum(d, m))) == (m >= 3)


def t_level_oracle(cover):
    """Count target monomials reachable as products, without any matrix."""
    k = cover.h20_degree
    right = [e for e in monomials_of_degree(cover.ws, k) if e[3] <= cover.d - 2]
    hit = set()
    for a in plane_monomials(cover.branch_degree):
        for b in right:
            e = tuple(x + y for x, y in zip(a, b))
            if e[3] <= cover.d - 2:
                hit.add(e)
    return len(hit)


class TestTLevel:
    def test_triple_cover(self):
        cert = t_level_surjective(CoverDatum(3, 3))
        assert cert.source_dim == 55 * 11 == 605
        assert cert.target_dim == dim_T(12, CoverDatum(3, 3)) == 146
        assert cert.rank == 146 and cert.verdict == SURJECTIVE

    def test_k3_multiplication_by_constants(self):
        cert = t_level_surjective(CoverDatum(2, 3))
        assert (cert.source_dim, cert.target_dim, cert.rank) == (28, 28, 28)
        assert cert.surjective

    def test_double_octic(self):
        cert = t_level_surjective(CoverDatum(2, 4))
        assert (cert.source_dim, cert.target_dim, cert.rank) == (45 * 3, 55, 55)
        assert cert.surjective

    @pytest.mark.parametrize("d", [2, 3, 4])
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_surjective_for_m_at_least_3(self, d, m):
        cover = CoverDatum(d, m)
        cert = t_level_surjective(cover)
        assert cert.surjective
        assert cert.rank == t_level_oracle(cover)

    @pytest.mark.parametrize("d,m", [(4, 2), (5, 2), (6, 2)])
    def test_fails_below_m3(self, d, m):
        cover = CoverDatum(d, m)
        cert = t_level_surjective(cover)
        assert not cert.surjective
        assert cert.rank == t_level_oracle(cover) < cert.target_dim

    def test_vacuous(self):
        assert t_level_surjective(CoverDatum(2, 2)).verdict == "vacuous"

    def test_second_prime_agrees(self):
        for d, m in [(2, 4), (3, 3)]:
            a = t_level_surjective(CoverDatum(d, m))
            b = t_level_surjective(CoverDatum(d, m), 1000003)
            assert a.surjective and b.surjective


class TestRLevel:
    def test_fermat_k3(self):
        cover = CoverDatum(2, 3)
        cert = r_level_surjective(MilnorData(cover, fermat_poly(cover)))
        assert (cert.source_dim, cert.target_dim, cert.rank) == (19, 19, 19)
        assert cert.surjective

    @pytest.mark.parametrize("d,m,target", [(2, 4, 37), (3, 3, 92)])
    def test_random(self, d, m, target):
        cover = CoverDatum(d, m)
        cert = r_level_surjective(MilnorData(cover, random_branch_poly(cover, 1)), seed=1)
        assert cert.target_dim == target == milnor_hilbert_series_coeff(cover.h11_degree, cover)
        assert cert.surjective and cert.seed == 1

    def test_two_primes(self):
        cover = CoverDatum(3, 3)
        md = MilnorData(cover, random_branch_poly(cover, 2))
        assert r_level_surjective(md).surjective
        assert r_level_surjective(md, 1000003).surjective

    def test_rejects_composite_prime(self):
        cover = CoverDatum(2, 3)
        with pytest.raises(ValueError):
            r_level_surjective(MilnorData(cover, fermat_poly(cover)), 91)


class TestCertificate:
    def test_verdicts(self):
        assert SurjectivityCertificate("R-level", 10, 4, 4, 7).verdict == SURJECTIVE
        assert SurjectivityCertificate("R-level", 10, 4, 3, 7).verdict == "not-surjective-mod-p"
        assert SurjectivityCertificate.vacuous("T-level", 7).verdict == "vacuous"

    def test_rank_bound_enforced(self):
        with pytest.raises(AssertionError):
            SurjectivityCertificate("R-level", 2, 4, 3, 7)


class TestWitness:
    def test_double_octic(self):
        r = picard_rank_one_witness(CoverDatum(2, 4), seed=1)
        assert r.positive
        assert r.verdict == "Picard-rank-1 criterion verified for this f"
        j = r.to_json()
        assert j["smoothness"] == "heuristic-pass" and j["summand"] is True
        assert set(j) >= {"d", "m", "seed", "prime", "smoothness", "summand",
                          "t_level", "r_level", "verdict"}

    def test_refuses_m2(self):
        with pytest.raises(HypothesisError, match="m >= 3"):
            picard_rank_one_witness(CoverDatum(2, 2), seed=1)

    def test_triple_cover(self):
        r = picard_rank_one_witness(CoverDatum(3, 3), seed=1)
        assert r.positive
        assert r.t_level.target_dim == 146
        assert r.r_level.target_dim == 92

    def test_cross_prime(self):
        r = picard_rank_one_witness(CoverDatum(2, 3), seed=1, cross_prime=1000003)
        assert r.positive
        assert r.cross_checks[0]["r_level"]["verdict"] == SURJECTIVE


class TestDCClass:
    @pytest.mark.parametrize("d,lc,k", [(2, 3, 3), (5, 1, 1), (3, 7, 7)])
    def test_examples(self, d, lc, k):
        assert dC_multiple_class(CoverDatum(d, 3), lc) == (Fraction(k), True)

    def test_nonpositive(self):
        with pytest.raises(ValueError):
            dC_multiple_class(CoverDatum(2, 3), 0)

import itertools
import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cyclicplane.algebra import (
    QuadExt,
    RankMatrix,
    SparsePoly,
    WeightSystem,
    echelon_pivots,
    is_prime,
    monomials_of_degree,
    quad_compare,
    rank_mod_p,
)


def brute_monomials(m, k):
    """Every 4-tuple with e_x + e_y + e_z + m e_w = k, by exhaustive search."""
    if k < 0:
        return []
    rng = range(k + 1)
    return [e for e in itertools.product(rng, rng, rng, range(k // m + 1))
            if e[0] + e[1] + e[2] + m * e[3] == k]


class TestMonomials:
    def test_degree_zero(self):
        assert monomials_of_degree(WeightSystem(3), 0) == [(0, 0, 0, 0)]

    def test_cubics_plus_w(self):
        mons = monomials_of_degree(WeightSystem(3), 3)
        assert len(mons) == 11
        assert (0, 0, 0, 1) in mons

    def test_negative_degree(self):
        assert monomials_of_degree(WeightSystem(3), -1) == []

    def test_order_is_descending_lex(self):
        mons = monomials_of_degree(WeightSystem(2), 4)
        assert mons[0] == (4, 0, 0, 0)
        assert mons[-1] == (0, 0, 0, 2)
        assert mons == sorted(mons, reverse=True)

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 7])
    def test_count_formula_against_enumeration(self, m):
        for k in range(31):
            formula = sum(math.comb(k - i * m + 2, 2) for i in range(k // m + 1))
            mons = monomials_of_degree(WeightSystem(m), k)
            assert len(mons) == formula
            assert sorted(mons) == sorted(brute_monomials(m, k))

    def test_bad_weight(self):
        with pytest.raises(ValueError):
            WeightSystem(0)


# ---------------------------------------------------------------------------
# QuadExt

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
radicands = st.integers(min_value=1, max_value=60)


class TestQuadCompare:
    def test_sqrt2_below_three_halves(self):
        assert quad_compare(QuadExt(0, 1, 2), QuadExt(Fraction(3, 2), 0, 2)) == -1

    def test_identity(self):
        assert quad_compare(QuadExt(2, 2, 2), QuadExt(2, 2, 2)) == 0

    def test_sqrt5_minus_one(self):
        assert quad_compare(QuadExt(-1, 1, 5), QuadExt(1, 0, 5)) == 1

    def test_mismatched_radicand(self):
        with pytest.raises(ValueError):
            quad_compare(QuadExt(0, 1, 2), QuadExt(0, 1, 3))

    def test_square_radicand(self):
        # sqrt(16) = 4, so 4 - 16/3 < 0 and sqrt(4) - 2 == 0
        assert QuadExt(Fraction(-16, 3), 1, 16).sign() == -1
        assert QuadExt(-2, 1, 4) == 0
        assert hash(QuadExt(-2, 1, 4)) == hash(QuadExt(0, 0, 4))

    @given(rationals, rationals, rationals, rationals, radicands)
    def test_consistent_with_floats(self, a, b, c, e, rad):
        u, v = QuadExt(a, b, rad), QuadExt(c, e, rad)
        gap = float(u) - float(v)
        assume(abs(gap) > 1e-6)
        assert quad_compare(u, v) == (1 if gap > 0 else -1)

    @given(rationals, rationals, rationals, rationals, rationals, rationals, radicands)
    def test_total_order(self, a, b, c, e, g, h, rad):
        u, v, w = QuadExt(a, b, rad), QuadExt(c, e, rad), QuadExt(g, h, rad)
        assert quad_compare(u, v) == -quad_compare(v, u)
        if quad_compare(u, v) <= 0 and quad_compare(v, w) <= 0:
            assert quad_compare(u, w) <= 0

    @given(rationals, rationals, radicands)
    def test_norm(self, a, b, rad):
        x = QuadExt(a, b, rad)
        prod = x * x.conjugate()
        assert prod.b == 0
        assert prod.a == a * a - b * b * rad

    @given(rationals, rationals, radicands)
    def test_inverse(self, a, b, rad):
        x = QuadExt(a, b, rad)
        assume(x.sign() != 0)
        assert x * x.inverse() == 1

    @given(rationals, rationals, radicands)
    def test_floor(self, a, b, rad):
        x = QuadExt(a, b, rad)
        n = x.floor()
        assert x >= n and x < n + 1
        assert x.ceil() == (n if x == n else n + 1)

    def test_to_radicand(self):
        # 3*sqrt(2) = sqrt(18)
        x = 3 * QuadExt.sqrt(2)
        assert x.to_radicand(18) == QuadExt.sqrt(18)
        with pytest.raises(ValueError):
            x.to_radicand(3)

    def test_json_roundtrip(self):
        x = QuadExt(Fraction(-2, 3), 1, 2)
        assert QuadExt.from_json(json.loads(json.dumps(x.to_json()))) == x
        assert x.to_json() == {"a": "-2/3", "b": "1", "rad": 2}


# ---------------------------------------------------------------------------
# rank over F_p


def oracle_rank(rows, p):
    """Row-basis insertion over F_p: keep a dict pivot -> normalised row."""
    basis = {}
    for row in rows:
        v = [x % p for x in row]
        while True:
            lead = next((i for i, x in enumerate(v) if x), None)
            if lead is None:
                break
            if lead not in basis:
                inv = pow(v[lead], p - 2, p)
                basis[lead] = [x * inv % p for x in v]
                break
            b = basis[lead]
            c = v[lead]
            v = [(x - c * y) % p for x, y in zip(v, b)]
    return len(basis)


def to_matrix(rows, p):
    entries = tuple((i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v)
    ncols = len(rows[0]) if rows else 0
    return RankMatrix(len(rows), ncols, entries, p)


class TestRank:
    def test_empty(self):
        assert rank_mod_p(RankMatrix(0, 5, ())) == 0

    def test_identity(self):
        m = RankMatrix(5, 5, tuple((i, i, 1) for i in range(5)), 7)
        assert rank_mod_p(m) == 5

    @pytest.mark.parametrize("p", [2, 3, 101, 2147483647])
    def test_all_ones(self, p):
        m = RankMatrix(3, 3, tuple((i, j, 1) for i in range(3) for j in range(3)), p)
        assert rank_mod_p(m) == 1

    def test_randomised_against_oracle(self):
        rng = random.Random(20240101)
        for trial in range(1200):
            p = (2, 3, 5)[trial % 3]
            r, c = rng.randint(0, 8), rng.randint(1, 8)
            rows = [[rng.randrange(p) for _ in range(c)] for _ in range(r)]
            if r == 0:
                assert rank_mod_p(RankMatrix(0, c, (), p)) == 0
                continue
            assert rank_mod_p(to_matrix(rows, p)) == oracle_rank(rows, p)

    def test_large_prime_object_path(self):
        p = (1 << 61) - 1
        assert is_prime(p)
        rows = [[1, 2, 3], [2, 4, 6], [p - 1, 5, 0]]
        assert rank_mod_p(to_matrix(rows, p)) == 2

    def test_pivots_are_leftmost(self):
        rows = [[0, 1, 1, 0], [0, 2, 2, 1]]
        assert echelon_pivots(to_matrix(rows, 7)) == [1, 3]

    def test_mod_p_rank_never_exceeds_rational_rank(self):
        # det 2: full rank over Q, rank 1 mod 2
        rows = [[1, 1], [1, 3]]
        assert rank_mod_p(to_matrix(rows, 2)) == 1
        assert rank_mod_p(to_matrix(rows, 3)) == 2

    def test_duplicate_entries_accumulate(self):
        m = RankMatrix(1, 1, ((0, 0, 1), (0, 0, 1)), 2)
        assert rank_mod_p(m) == 0


# ---------------------------------------------------------------------------
# SparsePoly


class TestSparsePoly:
    def test_drops_zeros_and_degree(self):
        f = SparsePoly({(2, 0, 0, 0): 1, (0, 2, 0, 0): 0, (0, 0, 0, 1): "3/2"}, WeightSystem(2))
        assert len(f) == 2
        assert f.degree == 2

    def test_inhomogeneous(self):
        f = SparsePoly({(2, 0, 0, 0): 1, (1, 0, 0, 0): 1}, WeightSystem(2))
        assert f.degree is None

    def test_derivative(self):
        f = SparsePoly({(3, 1, 0, 0): 2}, WeightSystem(3))
        assert f.derivative(0).terms == {(2, 1, 0, 0): 6}
        assert not f.derivative(2)

    def test_reduce_mod_p(self):
        f = SparsePoly({(1, 0, 0, 0): -1, (0, 1, 0, 0): Fraction(1, 2)}, WeightSystem(1))
        g = f.reduce(7)
        assert g.terms == {(1, 0, 0, 0): 6, (0, 1, 0, 0): 4}

    def test_json_roundtrip(self):
        f = SparsePoly({(6, 0, 0, 0): 1, (0, 3, 3, 0): Fraction(-5, 2)}, WeightSystem(3))
        obj = json.loads(f.dumps())
        assert obj["weights"] == [1, 1, 1, 3] and obj["degree"] == 6
        assert {"e": [0, 3, 3, 0], "c": "-5/2"} in obj["terms"]
        assert SparsePoly.from_json(obj) == f

    def test_json_degree_mismatch(self):
        obj = {"weights": [1, 1, 1, 3], "degree": 5, "terms": [{"e": [6, 0, 0, 0], "c": "1"}]}
        with pytest.raises(ValueError):
            SparsePoly.from_json(obj)

    @settings(max_examples=50)
    @given(st.dictionaries(st.tuples(*[st.integers(0, 4)] * 4), st.integers(-9, 9), max_size=8),
           st.lists(st.integers(-5, 5), min_size=4, max_size=4))
    def test_evaluate_matches_reduction(self, terms, point):
        f = SparsePoly(terms, WeightSystem(2))
        assert f.reduce(11).evaluate(point) == f.evaluate(point) % 11

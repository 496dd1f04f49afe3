"""Graded pieces of S = C[x,y,z,w], S' = C[x,y,z], T = S/(w^(d-1)) and the
Milnor algebra R = S/(w^(d-1), f_x, f_y, f_z) of the cyclic cover w^d + f = 0.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .algebra import (
    DEFAULT_PRIME,
    Monomial,
    RankMatrix,
    SparsePoly,
    WeightSystem,
    binom2,
    check_prime,
    echelon_pivots,
    monomials_of_degree,
    plane_monomials,
    rank_mod_p,
)


@dataclass(frozen=True)
class CoverDatum:
    """Simple cyclic d-uple plane X_{d,m} in P(1,1,1,m), branched over a
    plane curve of degree m*d.  The Galois group is Z/d (order recorded only).
    """

    d: int
    m: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError(f"cover degree d must be an integer >= 2, got {self.d!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"weight m must be an integer >= 1, got {self.m!r}")

    @property
    def branch_degree(self) -> int:
        return self.m * self.d

    @property
    def galois_order(self) -> int:
        return self.d

    @property
    def ws(self) -> WeightSystem:
        return WeightSystem(self.m)

    @property
    def h20_degree(self) -> int:
        return self.d * self.m - self.m - 3

    @property
    def h11_degree(self) -> int:
        return 2 * self.d * self.m - self.m - 3

    @property
    def theta_degree(self) -> int:
        return self.d * self.m

    def generator_degrees(self) -> tuple[int, int, int, int]:
        n = self.branch_degree
        return (self.m * (self.d - 1), n - 1, n - 1, n - 1)


def dim_S(k: int, m: int) -> int:
    """dim S_k for S = C[x,y,z,w] with deg w = m."""
    if k < 0:
        return 0
    return sum(binom2(k - i * m) for i in range(k // m + 1))


def dim_T(k: int, cover: CoverDatum) -> int:
    """dim T_k where T_k = sum_{i=0}^{d-2} w^i S'_{k-im}."""
    return sum(binom2(k - i * cover.m) for i in range(cover.d - 1))


def milnor_hilbert_series(cover: CoverDatum, order: int) -> list[int]:
    """Coefficients 0..order of
    (1 - t^{m(d-1)}) (1 - t^{md-1})^3 / ((1 - t)^3 (1 - t^m)).
    """
    n = order + 1
    num = np.zeros(n, dtype=object)
    num[0] = 1
    for g in cover.generator_degrees():
        shifted = np.zeros(n, dtype=object)
        shifted[g:] = num[: n - g] if g < n else []
        num = num - shifted
    # 1/(1-t)^3 then 1/(1-t^m)
    series = np.array([sum(num[j] * binom2(i - j) for j in range(i + 1)) for i in range(n)],
                      dtype=object)
    m = cover.m
    for i in range(m, n):
        series[i] += series[i - m]
    return [int(c) for c in series]


def milnor_hilbert_series_coeff(k: int, cover: CoverDatum) -> int:
    if k < 0:
        return 0
    return milnor_hilbert_series(cover, k)[k]


def pushforward_pg(cover: CoverDatum) -> int:
    """Geometric genus via the eigensheaf splitting: sum_i h0(P^2, O(dm-m-3-im))."""
    k = cover.h20_degree
    return sum(binom2(k - i * cover.m) for i in range(cover.d))


def euler_characteristic(cover: CoverDatum) -> int:
    """Topological e(X) = d * e(P^2 - B) + e(B) for smooth B of degree n."""
    n = cover.branch_degree
    e_b = -n * (n - 3)
    return cover.d * (3 - e_b) + e_b


# ---------------------------------------------------------------------------
# Branch polynomials


def fermat_poly(cover: CoverDatum) -> SparsePoly:
    n = cover.branch_degree
    return SparsePoly({(n, 0, 0, 0): 1, (0, n, 0, 0): 1, (0, 0, n, 0): 1}, cover.ws)


def random_branch_poly(cover: CoverDatum, seed: int) -> SparsePoly:
    """Coefficients uniform in {-10..10} minus 0 on every plane monomial of degree md."""
    rng = random.Random(seed)
    choices = [c for c in range(-10, 11) if c]
    terms = {e: rng.choice(choices) for e in plane_monomials(cover.branch_degree)}
    return SparsePoly(terms, cover.ws)


@dataclass(frozen=True)
class MilnorData:
    """A cover together with an integral branch equation f(x, y, z)."""

    cover: CoverDatum
    f: SparsePoly
    extra: tuple[SparsePoly, ...] = field(default=(), compare=False)

    def __post_init__(self):
        f, cover = self.f, self.cover
        if f.ws != cover.ws:
            raise ValueError("f lives in the wrong weight system")
        if f.involves_w():
            raise ValueError("f must be a polynomial in x, y, z only")
        if not f or f.degree is None:
            raise ValueError("f must be a nonzero homogeneous polynomial")
        if f.degree != cover.branch_degree:
            raise ValueError(f"f has degree {f.degree}, expected {cover.branch_degree}")
        for g in self.extra:
            if g.degree is None:
                raise ValueError("extra ideal generators must be homogeneous")

    @cached_property
    def generators(self) -> list[SparsePoly]:
        """w^(d-1), f_x, f_y, f_z, followed by any extra generators."""
        wpow = SparsePoly({(0, 0, 0, self.cover.d - 1): 1}, self.cover.ws)
        return [wpow, *self.f.gradient(3), *self.extra]

    def generator_degrees(self) -> list[int]:
        return [self.cover.generator_degrees()[i] if i < 4 else g.degree
                for i, g in enumerate(self.generators)]

    def with_generator(self, g: SparsePoly) -> MilnorData:
        return MilnorData(self.cover, self.f, (*self.extra, g))


def ideal_matrix(md: MilnorData, k: int, p: int) -> tuple[list[Monomial], RankMatrix]:
    """Matrix of the ideal's degree-k piece: one column g*mu per generator g
    and monomial mu of degree k - deg g, rows indexed by the basis of S_k.
    """
    basis = monomials_of_degree(md.cover.ws, k)
    index = {e: i for i, e in enumerate(basis)}
    columns = []
    for g, dg in zip(md.generators, md.generator_degrees()):
        if not g:
            continue
        gp = g.reduce(p)
        for mu in monomials_of_degree(md.cover.ws, k - dg):
            col = {}
            for e, c in gp.times_monomial(mu).terms.items():
                col[index[e]] = c
            if col:
                columns.append(col)
    return basis, RankMatrix.from_columns(len(basis), columns, p)


def _check_inputs(k: int, p: int) -> None:
    check_prime(p)
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")


def dim_R(k: int, md: MilnorData, p: int = DEFAULT_PRIME) -> int:
    """dim S_k minus the rank mod p of the ideal in degree k.

    Rank mod p never exceeds rank over Q, so this is an upper bound for the
    true dimension over Q; it is exact when it meets the series value.
    """
    _check_inputs(k, p)
    basis, mat = ideal_matrix(md, k, p)
    return len(basis) - rank_mod_p(mat)


def quotient_basis(md: MilnorData, k: int, p: int = DEFAULT_PRIME) -> list[Monomial]:
    """Monomials of S_k whose classes form a basis of R_k.

    Chosen greedily from the graded-lex-smallest end: a monomial is kept
    when it is independent of the ideal plus all smaller kept monomials.
    These are exactly the non-pivot columns of the leftmost-pivot echelon
    form of the ideal rows.
    """
    _check_inputs(k, p)
    basis, mat = ideal_matrix(md, k, p)
    pivots = set(echelon_pivots(mat.transpose()))
    return [e for i, e in enumerate(basis) if i not in pivots]


@dataclass(frozen=True)
class HodgeTriple:
    h20: int
    h11_prim: int
    h1_theta0: int
    negative_degrees: tuple[str, ...] = ()

    @property
    def h11_full(self) -> int:
        return self.h11_prim + 1

    def to_json(self, cover: CoverDatum) -> dict:
        return {
            "d": cover.d,
            "m": cover.m,
            "h20": self.h20,
            "h11_prim": self.h11_prim,
            "h11_full": self.h11_full,
            "h1_theta0": self.h1_theta0,
        }


def hodge_numbers(cover: CoverDatum, md: MilnorData | None = None,
                  p: int = DEFAULT_PRIME) -> HodgeTriple:
    """Graded dimensions of R at degrees dm-m-3, 2dm-m-3 and dm.

    Without a branch equation the complete-intersection series is used
    (the value for general f).  Negative degrees give zero and are flagged.
    """
    if md is not None and md.cover != cover:
        raise ValueError("MilnorData belongs to a different cover")
    names = ("h20", "h11_prim", "h1_theta0")
    degrees = (cover.h20_degree, cover.h11_degree, cover.theta_degree)
    values = []
    negative = []
    for name, k in zip(names, degrees):
        if k < 0:
            negative.append(name)
            values.append(0)
        elif md is None:
            values.append(milnor_hilbert_series_coeff(k, cover))
        else:
            values.append(dim_R(k, md, p))
    return HodgeTriple(*values, negative_degrees=tuple(negative))


# ---------------------------------------------------------------------------
# Smoothness of the branch curve (heuristic only)

SMOOTHNESS_PRIMES = (53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101)


def _singular_points_mod_p(f: SparsePoly, p: int) -> int:
    """Number of points of P^2(F_p) where f and its partials all vanish."""
    ys, zs = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    pts = [
        np.stack([np.ones(p * p, dtype=np.int64), ys.ravel(), zs.ravel()]),
        np.stack([np.zeros(p, dtype=np.int64), np.ones(p, dtype=np.int64), np.arange(p)]),
        np.array([[0], [0], [1]], dtype=np.int64),
    ]
    pts = np.concatenate(pts, axis=1)
    n = f.degree
    powers = np.ones((3, n + 1, pts.shape[1]), dtype=np.int64)
    for j in range(1, n + 1):
        powers[:, j] = powers[:, j - 1] * pts % p
    vanish = np.ones(pts.shape[1], dtype=bool)
    for g in (f, *f.gradient(3)):
        val = np.zeros(pts.shape[1], dtype=np.int64)
        for e, c in g.reduce(p).terms.items():
            val = (val + c * (powers[0, e[0]] * powers[1, e[1]] % p) % p * powers[2, e[2]]) % p
        vanish &= val == 0
    return int(vanish.sum())


def _line_restriction(f: SparsePoly, a: tuple[int, int, int], b: tuple[int, int, int]) -> list[int]:
    """Integer coefficients (low to high) of t -> f(a + t b)."""
    n = f.degree
    lin = [np.array([a[i], b[i]], dtype=object) for i in range(3)]
    pw = [[np.array([1], dtype=object)] for _ in range(3)]
    for i in range(3):
        for _ in range(n):
            pw[i].append(np.convolve(pw[i][-1], lin[i]))
    out = np.zeros(n + 1, dtype=object)
    for e, c in f.terms.items():
        term = np.convolve(np.convolve(pw[0][e[0]], pw[1][e[1]]), pw[2][e[2]])
        out[: len(term)] += c * term
    return [int(c) for c in out]


@dataclass(frozen=True)
class SmoothnessReport:
    passed: bool
    singular_primes: tuple[int, ...]
    tested_primes: tuple[int, ...]
    lines_squarefree: bool

    @property
    def label(self) -> str:
        return "heuristic-pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "result": self.label,
            "tested_primes": list(self.tested_primes),
            "primes_with_singular_points": list(self.singular_primes),
            "lines_squarefree": self.lines_squarefree,
        }


def smoothness_heuristic(f: SparsePoly, seed: int = 0, lines: int = 3,
                         primes: tuple[int, ...] = SMOOTHNESS_PRIMES) -> SmoothnessReport:
    """Search for singular points of B = {f = 0}; never a proof of smoothness.

    Looks for common zeros of f, f_x, f_y, f_z among F_p-points and checks
    that f restricted to random rational lines is squarefree.  A smooth
    curve over Q has singular reductions at only a few primes, so B is
    rejected when more than half of the tested primes show a singular point.
    """
    from sympy import Poly, symbols

    n = f.degree
    usable = tuple(p for p in primes if n % p)
    bad = tuple(p for p in usable if _singular_points_mod_p(f, p))
    rng = random.Random(seed)
    t = symbols("t")
    squarefree = True
    for _ in range(lines):
        a = tuple(rng.randint(-10, 10) for _ in range(3))
        b = tuple(rng.randint(-10, 10) for _ in range(3))
        coeffs = _line_restriction(f, a, b)
        g = Poly(list(reversed(coeffs)), t)
        if g.degree() > 0 and not g.is_sqf:
            squarefree = False
    passed = squarefree and 2 * len(bad) <= len(usable)
    return SmoothnessReport(passed, bad, usable, squarefree)

"""Exact arithmetic substrate: weighted monomials, sparse polynomials,
real quadratic numbers and rank over prime fields.

Everything here is immutable and deterministic.  Monomials are plain
4-tuples of exponents ``(ex, ey, ez, ew)`` for the variables x, y, z, w
of the weighted ring C[x, y, z, w] with weights (1, 1, 1, m).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

Monomial = tuple[int, int, int, int]
Rational = Union[int, Fraction]

DEFAULT_PRIME = 2147483647
# (p - 1)**2 must fit in a signed 64-bit integer for the vectorised kernel.
_INT64_PRIME_LIMIT = 3037000499


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    r, s = n - 1, 0
    while r % 2 == 0:
        r //= 2
        s += 1
    for a in small:
        x = pow(a, r, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    return p


@dataclass(frozen=True)
class WeightSystem:
    """Grading of C[x, y, z, w] with deg x = deg y = deg z = 1, deg w = m."""

    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"weight of w must be a positive integer, got {self.m!r}")

    @property
    def weights(self) -> tuple[int, int, int, int]:
        return (1, 1, 1, self.m)

    @property
    def nvars(self) -> int:
        return 4

    def degree(self, e: Monomial) -> int:
        return e[0] + e[1] + e[2] + self.m * e[3]


def monomials_of_degree(ws: WeightSystem, k: int) -> list[Monomial]:
    """All monomials of weighted degree exactly ``k``.

    Ordered graded-lexicographically with x > y > z > w, i.e. by
    descending exponent tuple; ``x**k`` comes first.  Negative ``k``
    gives the empty list.
    """
    out: list[Monomial] = []
    if k < 0:
        return out
    m = ws.m
    for ew in range(k // m + 1):
        rest = k - m * ew
        for ex in range(rest + 1):
            for ey in range(rest - ex + 1):
                out.append((ex, ey, rest - ex - ey, ew))
    out.sort(reverse=True)
    return out


def plane_monomials(k: int) -> list[Monomial]:
    """Monomials of degree ``k`` in x, y, z only (the ring S' = C[x, y, z])."""
    if k < 0:
        return []
    out = [(ex, ey, k - ex - ey, 0) for ex in range(k + 1) for ey in range(k - ex + 1)]
    out.sort(reverse=True)
    return out


def binom2(n: int) -> int:
    """C(n + 2, 2), the dimension of plane forms of degree n (0 for n < 0)."""
    return (n + 2) * (n + 1) // 2 if n >= 0 else 0


# ---------------------------------------------------------------------------
# Real quadratic numbers


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, eq=False)
class QuadExt:
    """The real number ``a + b*sqrt(rad)`` with rational ``a``, ``b``.

    ``rad`` is kept exactly as given (it is the self-intersection d, which
    may be a perfect square); all comparisons are exact.
    """

    a: Fraction
    b: Fraction
    rad: int

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))
        if not isinstance(self.rad, int) or self.rad < 1:
            raise ValueError(f"radicand must be a positive integer, got {self.rad!r}")

    @classmethod
    def sqrt(cls, rad: int) -> QuadExt:
        return cls(Fraction(0), Fraction(1), rad)

    @classmethod
    def rational(cls, q: Rational, rad: int) -> QuadExt:
        return cls(_as_fraction(q), Fraction(0), rad)

    @property
    def root(self) -> int | None:
        """Integer square root of the radicand when it is a perfect square."""
        r = math.isqrt(self.rad)
        return r if r * r == self.rad else None

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a**2 against b**2 * rad
        return sa * _sign(self.a * self.a - self.b * self.b * self.rad)

    def _coerce(self, other) -> QuadExt:
        if isinstance(other, QuadExt):
            if other.rad != self.rad:
                raise ValueError(f"mismatched radicands {self.rad} and {other.rad}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(Fraction(other), Fraction(0), self.rad)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a + o.a, self.b + o.b, self.rad)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.rad)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a - o.a, self.b - o.b, self.rad)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(
            self.a * o.a + self.b * o.b * self.rad,
            self.a * o.b + self.b * o.a,
            self.rad,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.rad)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.rad

    def inverse(self) -> QuadExt:
        r = self.root
        if r is not None:
            q = self.a + self.b * r
            if q == 0:
                raise ZeroDivisionError("inverse of zero")
            return QuadExt(1 / q, Fraction(0), self.rad)
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadExt(self.a / n, -self.b / n, self.rad)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def compare(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadExt with {type(other).__name__}")
        return (self - o).sign()

    def __eq__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        if isinstance(other, QuadExt) and other.rad != self.rad:
            return False
        return self.compare(other) == 0

    def __hash__(self):
        r = self.root
        if r is not None:
            return hash((self.a + self.b * r, 0, self.rad))
        return hash((self.a, self.b, self.rad))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def floor(self) -> int:
        """Exact floor, found by bisection on exact comparisons."""
        bound = abs(self.a) + abs(self.b) * (math.isqrt(self.rad) + 1) + 1
        lo, hi = -math.ceil(bound), math.ceil(bound)  # lo <= x < hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.compare(mid) >= 0:
                lo = mid
            else:
                hi = mid
        return lo

    def ceil(self) -> int:
        return -(-self).floor()

    def to_radicand(self, new_rad: int) -> QuadExt:
        """Rewrite over sqrt(new_rad), valid when new_rad / rad is a rational square."""
        ratio = Fraction(new_rad, self.rad)
        rn, rd = math.isqrt(ratio.numerator), math.isqrt(ratio.denominator)
        if rn * rn != ratio.numerator or rd * rd != ratio.denominator:
            raise ValueError(f"sqrt({new_rad}) is not a rational multiple of sqrt({self.rad})")
        return QuadExt(self.a, self.b / Fraction(rn, rd), new_rad)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.rad)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "rad": self.rad}

    @classmethod
    def from_json(cls, obj: Mapping) -> QuadExt:
        return cls(Fraction(obj["a"]), Fraction(obj["b"]), int(obj["rad"]))

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.rad})"

    def __repr__(self):
        return f"QuadExt({self.a!s}, {self.b!s}, {self.rad})"


def quad_compare(u: QuadExt, v: QuadExt) -> int:
    """Exact order of ``u`` and ``v``: -1, 0 or 1.  Radicands must agree."""
    if u.rad != v.rad:
        raise ValueError(f"mismatched radicands {u.rad} and {v.rad}")
    return u.compare(v)


# ---------------------------------------------------------------------------
# Sparse polynomials


@dataclass(frozen=True)
class SparsePoly:
    """Polynomial in x, y, z, w as a map from exponent tuples to coefficients.

    ``modulus`` is ``None`` for exact rationals, otherwise a prime p and
    coefficients are ints in [0, p).
    """

    terms: Mapping[Monomial, Rational]
    ws: WeightSystem
    modulus: int | None = None
    _degree: int | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        clean: dict[Monomial, Rational] = {}
        for e, c in self.terms.items():
            e = tuple(int(v) for v in e)
            if len(e) != 4 or min(e) < 0:
                raise ValueError(f"bad exponent vector {e}")
            if self.modulus is None:
                c = _as_fraction(c)
                if c.denominator == 1:
                    c = int(c)
            else:
                c = _as_fraction(c)
                c = c.numerator * pow(c.denominator, -1, self.modulus) % self.modulus
            if c:
                clean[e] = clean.get(e, 0) + c
                if self.modulus is not None:
                    clean[e] %= self.modulus
                if not clean[e]:
                    del clean[e]
        object.__setattr__(self, "terms", dict(sorted(clean.items(), reverse=True)))
        degs = {self.ws.degree(e) for e in clean}
        object.__setattr__(self, "_degree", degs.pop() if len(degs) == 1 else None)

    @property
    def degree(self) -> int | None:
        """Weighted degree, or ``None`` when zero or inhomogeneous."""
        return self._degree

    def is_homogeneous(self) -> bool:
        return self._degree is not None or not self.terms

    def involves_w(self) -> bool:
        return any(e[3] for e in self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def derivative(self, var: int) -> SparsePoly:
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return SparsePoly(out, self.ws, self.modulus)

    def gradient(self, nvars: int = 4) -> list[SparsePoly]:
        return [self.derivative(i) for i in range(nvars)]

    def reduce(self, p: int) -> SparsePoly:
        if self.modulus is not None:
            if self.modulus != p:
                raise ValueError("cannot change modulus of a reduced polynomial")
            return self
        return SparsePoly(self.terms, self.ws, p)

    def __add__(self, other: SparsePoly) -> SparsePoly:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(out, self.ws, self.modulus)

    def times_monomial(self, mu: Monomial, scale: Rational = 1) -> SparsePoly:
        out = {tuple(a + b for a, b in zip(e, mu)): c * scale for e, c in self.terms.items()}
        return SparsePoly(out, self.ws, self.modulus)

    def evaluate(self, point: Sequence[Rational]):
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t = t * v**k
            total += t
        if self.modulus is not None:
            total %= self.modulus
        return total

    def to_json(self) -> dict:
        """Interchange form: header with weights/degree, then the term list."""
        return {
            "weights": list(self.ws.weights),
            "degree": self.degree,
            "field": "Q" if self.modulus is None else f"F_{self.modulus}",
            "terms": [{"e": list(e), "c": str(c)} for e, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> SparsePoly:
        weights = list(obj["weights"])
        if len(weights) != 4 or weights[:3] != [1, 1, 1]:
            raise ValueError(f"weights must be (1, 1, 1, m), got {weights}")
        fld = obj.get("field", "Q")
        modulus = None if fld == "Q" else int(str(fld).removeprefix("F_"))
        terms = {tuple(t["e"]): Fraction(str(t["c"])) for t in obj["terms"]}
        poly = cls(terms, WeightSystem(int(weights[3])), modulus)
        declared = obj.get("degree")
        if declared is not None and poly.terms and poly.degree != declared:
            raise ValueError(f"declared degree {declared} does not match terms")
        return poly

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# Rank over F_p


@dataclass(frozen=True)
class RankMatrix:
    """Sparse matrix over F_p given by (row, col, value) triples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...]
    prime: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(
            self, "entries",
            tuple((int(r), int(c), int(v) % self.prime) for r, c, v in self.entries),
        )

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable[Mapping[int, int]],
                     prime: int = DEFAULT_PRIME) -> RankMatrix:
        entries = []
        ncols = 0
        for j, col in enumerate(columns):
            ncols = j + 1
            entries.extend((i, j, v) for i, v in col.items())
        return cls(nrows, ncols, tuple(entries), prime)

    def transpose(self) -> RankMatrix:
        return RankMatrix(self.cols, self.rows,
                          tuple((c, r, v) for r, c, v in self.entries), self.prime)

    def dense(self) -> np.ndarray:
        dtype = np.int64 if self.prime <= _INT64_PRIME_LIMIT else object
        a = np.zeros((self.rows, self.cols), dtype=dtype)
        for r, c, v in self.entries:
            a[r, c] = (a[r, c] + v) % self.prime
        return a


def _echelon_pivots_dense(a: np.ndarray, p: int) -> list[int]:
    """Leftmost pivot columns of the row echelon form of ``a`` over F_p."""
    a = a.copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            factors = a[below, c][:, None]
            a[below, c:] = (a[below, c:] - factors * a[r, c:]) % p
        pivots.append(c)
        r += 1
    return pivots


def _components(m: RankMatrix) -> list[tuple[list[int], list[int]]]:
    """Connected components of the row/column incidence graph."""
    parent = list(range(m.rows + m.cols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r, c, v in m.entries:
        if v:
            a, b = find(r), find(m.rows + c)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for r in range(m.rows):
        groups.setdefault(find(r), ([], []))[0].append(r)
    for c in range(m.cols):
        groups.setdefault(find(m.rows + c), ([], []))[1].append(c)
    return [g for g in groups.values() if g[0] and g[1]]


def echelon_pivots(m: RankMatrix) -> list[int]:
    """Pivot columns (leftmost choice) of ``m`` over F_p, in increasing order.

    The matrix is split into independent blocks first; the pivot set of a
    block-diagonal matrix is the union of the blocks' pivot sets.
    """
    if m.rows == 0 or m.cols == 0:
        return []
    full = m.dense()
    pivots: list[int] = []
    for rows, cols in _components(m):
        block = full[np.ix_(rows, cols)]
        pivots.extend(cols[j] for j in _echelon_pivots_dense(block, m.prime))
    return sorted(pivots)


def rank_mod_p(m: RankMatrix) -> int:
    """Exact rank of ``m`` over F_p."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # rank is transpose invariant; eliminate along the shorter side
    if m.cols > m.rows:
        m = m.transpose()
    return len(echelon_pivots(m))

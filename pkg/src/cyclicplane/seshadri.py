"""Seshadri-constant bounds on cyclic covers w^d + f = 0 in P(1,1,1,m).

Nothing here computes eps(L; x) itself.  The module certifies the interval
[sqrt(d) - d/m, sqrt(d)] and records the argument behind the lower bound as a
trace of exact, replayable steps.  Floats only appear in display fields.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import QuadExt, binom2, quad_compare
from .milnor import CoverDatum
from .picard import HypothesisError, dC_multiple_class


@dataclass(frozen=True)
class CurveSample:
    """A curve C through x: L.C, mult_x C, optionally k (dC in |kL|) and the
    degree of C0 when C = pi^* C0."""

    L_dot_C: int
    mult: int
    k: int | None = None
    plane_degree: int | None = None

    def __post_init__(self):
        if self.mult < 1:
            raise ValueError("multiplicity must be at least 1")
        if self.L_dot_C < 1:
            raise ValueError("L.C must be at least 1")


def self_intersection(cover: CoverDatum) -> int:
    """L^2 = deg X / (product of weights) = md / m."""
    q = Fraction(cover.branch_degree, 1 * 1 * 1 * cover.m)
    assert q.denominator == 1 and q == cover.d
    return int(q)


def epsilon_ratio(c: CurveSample) -> Fraction:
    return Fraction(c.L_dot_C, c.mult)


def is_submaximal(ratio: Fraction, d: int) -> bool:
    """ratio < sqrt(d), decided exactly."""
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    return quad_compare(QuadExt.rational(ratio, d), QuadExt.sqrt(d)) < 0


def scale_polarization(ratio: Fraction, n: int) -> Fraction:
    """eps(nL; x) = n eps(L; x)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return n * Fraction(ratio)


def bauer_degree_bound(Lsq: int, eps) -> QuadExt:
    """L^2 / (sqrt(L^2) - eps) as an exact element of Q(sqrt(L^2)).

    Any irreducible submaximal curve through a very general point has L.C
    strictly below this value.  ``eps`` may be rational or a QuadExt over
    sqrt(Lsq); it must lie strictly below sqrt(Lsq).
    """
    e = eps if isinstance(eps, QuadExt) else QuadExt.rational(eps, Lsq)
    if e.rad != Lsq:
        raise ValueError(f"eps lives over sqrt({e.rad}), expected sqrt({Lsq})")
    gap = QuadExt.sqrt(Lsq) - e
    if gap.sign() <= 0:
        raise ValueError("not submaximal: eps >= sqrt(L^2)")
    return QuadExt.rational(Lsq, Lsq) / gap


def pullback_section_count(k: int, cover: CoverDatum) -> int:
    """h0(X, kL) = sum_{i=0}^{d-1} h0(P^2, O(k - im))."""
    return sum(binom2(k - i * cover.m) for i in range(cover.d))


def pullback_not_submaximal_check(plane_degree: int, mult: int, d: int) -> tuple[bool, Fraction]:
    """For C = pi^* C0 at a point off the branch curve: ratio d*deg/mult >= sqrt(d)."""
    if plane_degree < 1 or mult < 1:
        raise ValueError("degree and multiplicity must be positive")
    if mult > plane_degree:
        raise ValueError(f"multiplicity {mult} exceeds plane degree {plane_degree}")
    ratio = Fraction(d * plane_degree, mult)
    ok = quad_compare(QuadExt.rational(ratio, d), QuadExt.sqrt(d)) >= 0
    return ok, ratio


def lower_bound(cover: CoverDatum) -> QuadExt:
    d = cover.d
    return QuadExt.sqrt(d) - Fraction(d, cover.m)


def _require_m3(cover: CoverDatum) -> None:
    if cover.m < 3:
        raise HypothesisError(f"the Seshadri interval requires m >= 3 (got m={cover.m})")


# ---------------------------------------------------------------------------
# Derivation trace
#
# Each step is a JSON-ready dict {"step", "id", "inputs", "conclusion"};
# exact numbers are stored as strings or QuadExt dicts, never as floats.


def _step_assume(cover: CoverDatum) -> dict:
    d, m = cover.d, cover.m
    lsq = self_intersection(cover)
    low = lower_bound(cover)
    return {
        "id": "assume-submaximal",
        "inputs": {"d": d, "m": m},
        "conclusion": {
            "L_sq": lsq,
            "eps_strictly_below": low.to_json(),
            "statement": "C irreducible, submaximal at very general x, sqrt(d) - eps_C > d/m",
        },
    }


def _step_class(cover: CoverDatum) -> dict:
    samples = []
    for lc in range(1, cover.m + 1):
        k, integral = dC_multiple_class(cover, lc)
        samples.append([lc, str(k), integral])
    return {
        "id": "dC-class",
        "inputs": {"d": cover.d, "m": cover.m, "L_dot_C": list(range(1, cover.m + 1))},
        "conclusion": {
            "samples": samples,
            "k_equals_L_dot_C": all(Fraction(k) == lc and ok for lc, k, ok in samples),
        },
    }


def _step_bauer(cover: CoverDatum) -> dict:
    d, m = cover.d, cover.m
    low = lower_bound(cover)
    bound = bauer_degree_bound(d, low)
    # k < bound with k an integer  <=>  k <= ceil(bound) - 1
    k_max = bound.ceil() - 1
    return {
        "id": "bauer-bound",
        "inputs": {"L_sq": d, "eps_sup": low.to_json()},
        "conclusion": {
            "bound": bound.to_json(),
            "bound_equals_m": bound == m,
            "k_max": k_max,
            "candidate_k": list(range(1, k_max + 1)),
        },
    }


def _step_sections(cover: CoverDatum, ks: list[int]) -> dict:
    counts = [[k, pullback_section_count(k, cover), binom2(k)] for k in ks]
    return {
        "id": "projection-formula",
        "inputs": {"d": cover.d, "m": cover.m, "k": ks},
        "conclusion": {
            "counts": counts,
            "all_pullbacks": all(hx == hp for _, hx, hp in counts),
        },
    }


def _step_lemma(cover: CoverDatum, ks: list[int]) -> dict:
    checked = 0
    ok = True
    min_ratio = None
    for k in ks:
        for mult in range(1, k + 1):
            good, ratio = pullback_not_submaximal_check(k, mult, cover.d)
            ok &= good
            checked += 1
            min_ratio = ratio if min_ratio is None else min(min_ratio, ratio)
    return {
        "id": "pullback-not-submaximal",
        "inputs": {"d": cover.d, "plane_degrees": ks},
        "conclusion": {
            "pairs_checked": checked,
            "min_ratio": None if min_ratio is None else str(min_ratio),
            "none_submaximal": ok,
        },
    }


def _step_conclude(cover: CoverDatum, eliminated: list[int], holds: bool) -> dict:
    return {
        "id": "conclusion",
        "inputs": {"d": cover.d, "m": cover.m, "eliminated_k": eliminated},
        "conclusion": {
            "contradiction": holds,
            "eps_at_least": lower_bound(cover).to_json(),
        },
    }


def contradiction_chain(cover: CoverDatum) -> list[dict]:
    """Trace showing no curve can push eps below sqrt(d) - d/m.

    A submaximal C with sqrt(d) - eps_C > d/m has dC in |kL| with k = L.C,
    Bauer's bound forces k < m, every such class is a pullback from the
    plane, and pullbacks are never submaximal.
    """
    _require_m3(cover)
    steps = [_step_assume(cover), _step_class(cover), _step_bauer(cover)]
    ks = steps[2]["conclusion"]["candidate_k"]
    steps.append(_step_sections(cover, ks))
    steps.append(_step_lemma(cover, ks))
    steps.append(_step_conclude(cover, ks, _chain_holds(steps)))
    for i, s in enumerate(steps, 1):
        s["step"] = i
    return [{"step": s["step"], **{k: v for k, v in s.items() if k != "step"}} for s in steps]


_REPLAYERS = {
    "assume-submaximal": lambda c, s: _step_assume(c),
    "dC-class": lambda c, s: _step_class(c),
    "bauer-bound": lambda c, s: _step_bauer(c),
    "projection-formula": lambda c, s: _step_sections(c, s["inputs"]["k"]),
    "pullback-not-submaximal": lambda c, s: _step_lemma(c, s["inputs"]["plane_degrees"]),
}


def _chain_holds(steps: list[dict]) -> bool:
    by_id = {s["id"]: s["conclusion"] for s in steps}
    return bool(
        by_id["dC-class"]["k_equals_L_dot_C"]
        and by_id["bauer-bound"]["bound_equals_m"]
        and by_id["projection-formula"]["all_pullbacks"]
        and by_id["pullback-not-submaximal"]["none_submaximal"]
    )


def replay_trace(d: int, m: int, trace: list[dict]) -> bool:
    """Recompute every step from its recorded inputs and compare conclusions."""
    cover = CoverDatum(d, m)
    if [s.get("step") for s in trace] != list(range(1, len(trace) + 1)):
        return False
    if [s["id"] for s in trace] != [*_REPLAYERS, "conclusion"]:
        return False
    for s in trace[:-1]:
        redo = _REPLAYERS[s["id"]](cover, s)
        if redo["inputs"] != s["inputs"] or redo["conclusion"] != s["conclusion"]:
            return False
    final = trace[-1]
    redo = _step_conclude(cover, trace[2]["conclusion"]["candidate_k"], _chain_holds(trace[:-1]))
    if redo["inputs"] != final["inputs"] or redo["conclusion"] != final["conclusion"]:
        return False
    return final["conclusion"]["contradiction"] is True


@dataclass
class SeshadriReport:
    d: int
    m: int
    lower: QuadExt
    upper: QuadExt
    clamped: bool
    trace: list[dict] = field(default_factory=list)

    def __post_init__(self):
        assert self.upper * self.upper == self.d
        assert self.lower == self.upper - Fraction(self.d, self.m)
        assert self.lower < self.upper

    def to_json(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "m": self.m,
            "lower": self.lower.to_json(),
            "upper": self.upper.to_json(),
            "clamped": self.clamped,
            "trace": self.trace,
            "lower_float": float(f"{float(self.lower):.12g}"),
            "upper_float": float(f"{float(self.upper):.12g}"),
        }

    @classmethod
    def from_json(cls, obj: dict) -> SeshadriReport:
        return cls(
            int(obj["d"]), int(obj["m"]),
            QuadExt.from_json(obj["lower"]), QuadExt.from_json(obj["upper"]),
            bool(obj["clamped"]), list(obj["trace"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def replay(self) -> bool:
        return replay_trace(self.d, self.m, self.trace)


def seshadri_interval(cover: CoverDatum) -> SeshadriReport:
    """[sqrt(d) - d/m, sqrt(d)] for a general point of a general X_{d,m}."""
    _require_m3(cover)
    upper = QuadExt.sqrt(self_intersection(cover))
    lower = lower_bound(cover)
    return SeshadriReport(
        cover.d, cover.m, lower, upper,
        clamped=lower.sign() <= 0,
        trace=contradiction_chain(cover),
    )

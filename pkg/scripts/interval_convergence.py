"""How fast the certified lower bound sqrt(d) - d/m approaches sqrt(d).

For each d, prints the smallest m whose interval has width below delta,
and a few sample intervals.

    python scripts/interval_convergence.py --d 2..7 --delta 1/10
"""
import argparse
from fractions import Fraction

from cyclicplane.cli import parse_range
from cyclicplane.milnor import CoverDatum
from cyclicplane.seshadri import seshadri_interval


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", default="2..7")
    ap.add_argument("--delta", type=Fraction, default=Fraction(1, 10))
    args = ap.parse_args()

    for d in parse_range(args.d):
        # width is exactly d/m
        m_needed = max(3, int(d / args.delta) + 1)
        r = seshadri_interval(CoverDatum(d, m_needed))
        assert r.upper - r.lower < args.delta
        samples = ", ".join(
            f"m={m}: [{float(s.lower):.4f}, {float(s.upper):.4f}]{' clamped' if s.clamped else ''}"
            for m in (3, 10, 100)
            for s in [seshadri_interval(CoverDatum(d, m))]
        )
        print(f"d={d}: width < {args.delta} from m={m_needed}; {samples}")


if __name__ == "__main__":
    main()

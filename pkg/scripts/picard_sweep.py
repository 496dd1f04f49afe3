"""Run the Picard rank one witness over a (d, m) grid, resampling f on failure.

    python scripts/picard_sweep.py --d 2..4 --m 3..5 --attempts 5
"""
import argparse
import time

from cyclicplane.cli import parse_range
from cyclicplane.milnor import CoverDatum
from cyclicplane.picard import picard_rank_one_witness


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", default="2..4")
    ap.add_argument("--m", default="3..5")
    ap.add_argument("--attempts", type=int, default=5)
    ap.add_argument("--prime", type=int, default=2147483647)
    args = ap.parse_args()

    for d in parse_range(args.d):
        for m in parse_range(args.m):
            start = time.perf_counter()
            for seed in range(1, args.attempts + 1):
                r = picard_rank_one_witness(CoverDatum(d, m), seed, args.prime)
                if r.positive:
                    break
            print(f"d={d} m={m} seed={seed} T {r.t_level.rank}/{r.t_level.target_dim} "
                  f"R {r.r_level.rank}/{r.r_level.target_dim} "
                  f"{'ok' if r.positive else 'FAILED'} ({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    main()

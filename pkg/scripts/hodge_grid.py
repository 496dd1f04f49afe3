"""Hodge data of general X_{d,m} over a grid, with the Euler-characteristic check.

    python scripts/hodge_grid.py --d 2..5 --m 1..6
"""
import argparse

from cyclicplane.cli import parse_range
from cyclicplane.milnor import CoverDatum, euler_characteristic, hodge_numbers, pushforward_pg


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", default="2..5")
    ap.add_argument("--m", default="1..6")
    args = ap.parse_args()

    print(f"{'d':>3} {'m':>3} {'h20':>6} {'h11':>7} {'theta0':>7} {'e(X)':>7}  ok")
    for d in parse_range(args.d):
        for m in parse_range(args.m):
            cover = CoverDatum(d, m)
            t = hodge_numbers(cover)
            e = euler_characteristic(cover)
            ok = t.h20 == pushforward_pg(cover) and e == 2 + 2 * t.h20 + t.h11_full
            flag = " (h20 degree < 0)" if t.negative_degrees else ""
            print(f"{d:>3} {m:>3} {t.h20:>6} {t.h11_full:>7} {t.h1_theta0:>7} {e:>7}  {ok}{flag}")


if __name__ == "__main__":
    main()

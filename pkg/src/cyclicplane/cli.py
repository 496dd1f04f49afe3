"""Command-line interface.

    cyclicplane hodge --d 2 --m 3 --f fermat
    cyclicplane picard-check --d 2 --m 4 --seed 1
    cyclicplane seshadri --d 2 --m 3
    cyclicplane table --d 2..4 --m 3..6 --format csv
    cyclicplane hilbert --d 3 --m 3

Exit codes: 0 success, 1 internal error, 2 hypothesis violation,
3 negative certificate (resample f).  Table cells run on a thread pool
sized by $CYCLICPLANE_THREADS (default: CPU count); output never depends
on it.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .algebra import DEFAULT_PRIME, SparsePoly, check_prime
from .milnor import (
    CoverDatum,
    MilnorData,
    euler_characteristic,
    fermat_poly,
    hodge_numbers,
    milnor_hilbert_series,
    pushforward_pg,
    random_branch_poly,
)
from .picard import HypothesisError, picard_rank_one_witness  # noqa: F401
from .seshadri import seshadri_interval

THREADS_ENV = "CYCLICPLANE_THREADS"

EXIT_OK, EXIT_INTERNAL, EXIT_HYPOTHESIS, EXIT_NEGATIVE = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """``"3"`` or inclusive ``"2..4"``."""
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigError(f"malformed range {text!r}") from None
    if hi < lo:
        raise ConfigError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


@dataclass(frozen=True)
class RunConfig:
    command: str
    d: str
    m: str
    seed: int = 1
    prime: int = DEFAULT_PRIME
    format: str = "json"
    f: str | None = None
    output: str | None = None
    order: int | None = None
    attempts: int = 1
    cross_prime: int | None = None

    def cells(self) -> list[tuple[int, int]]:
        return [(d, m) for d in parse_range(self.d) for m in parse_range(self.m)]

    def provenance(self) -> dict:
        out = asdict(self)
        out.pop("output")
        return out


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


def _map_cells(fn, cells):
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(fn, cells))


def _branch_poly(cfg: RunConfig, cover: CoverDatum) -> SparsePoly | None:
    if cfg.f is None:
        return None
    if cfg.f == "fermat":
        return fermat_poly(cover)
    if cfg.f == "random":
        return random_branch_poly(cover, cfg.seed)
    path = Path(cfg.f)
    if not path.exists():
        raise ConfigError(f"--f must be 'fermat', 'random' or a polynomial file, got {cfg.f!r}")
    poly = SparsePoly.from_json(json.loads(path.read_text()))
    if poly.ws != cover.ws:
        raise ConfigError(f"polynomial file has weights {poly.ws.weights}, cover needs m={cover.m}")
    return poly


# ---------------------------------------------------------------------------
# commands: each returns (rows, exit code)


def cmd_hodge(cfg: RunConfig):
    def cell(dm):
        cover = CoverDatum(*dm)
        f = _branch_poly(cfg, cover)
        md = MilnorData(cover, f) if f is not None else None
        triple = hodge_numbers(cover, md, cfg.prime)
        series = hodge_numbers(cover)
        pg = pushforward_pg(cover)
        euler = euler_characteristic(cover)
        consistent = (
            triple == series
            and triple.h20 == pg
            and euler == 2 + 2 * triple.h20 + triple.h11_full
        )
        row = triple.to_json(cover)
        row.update({
            "f": cfg.f or "general (series)",
            "series_oracle": [series.h20, series.h11_prim, series.h1_theta0],
            "pushforward_pg": pg,
            "euler_characteristic": euler,
            "consistent": consistent,
            "negative_degrees": list(triple.negative_degrees),
        })
        return row

    rows = _map_cells(cell, cfg.cells())
    code = EXIT_OK if all(r["consistent"] for r in rows) else EXIT_NEGATIVE
    return rows, code


def cmd_picard_check(cfg: RunConfig):
    cells = cfg.cells()
    for d, m in cells:
        if m < 3:
            raise HypothesisError(f"m >= 3 required for the Picard rank one criterion (d={d}, m={m})")

    def cell(dm):
        cover = CoverDatum(*dm)
        tried = []
        report = None
        for seed in range(cfg.seed, cfg.seed + cfg.attempts):
            report = picard_rank_one_witness(cover, seed, cfg.prime, cfg.cross_prime)
            tried.append(seed)
            if report.positive:
                break
        row = report.to_json()
        row["seeds_tried"] = tried
        return row

    rows = _map_cells(cell, cells)
    return rows, EXIT_OK if all(r["positive"] for r in rows) else EXIT_NEGATIVE


def _seshadri_row(dm):
    d, m = dm
    if m < 3:
        return {"d": d, "m": m, "status": "hypothesis m>=3 unmet"}
    row = seshadri_interval(CoverDatum(d, m)).to_json()
    row["status"] = "ok"
    row["verified"] = row["trace"][-1]["conclusion"]["contradiction"]
    return row


def cmd_seshadri(cfg: RunConfig):
    cells = cfg.cells()
    for d, m in cells:
        if m < 3:
            raise HypothesisError(f"the Seshadri interval requires m >= 3 (d={d}, m={m})")
    return _map_cells(_seshadri_row, cells), EXIT_OK


def cmd_table(cfg: RunConfig):
    rows = []
    for row in _map_cells(_seshadri_row, cfg.cells()):
        row.pop("trace", None)
        rows.append(row)
    return rows, EXIT_OK


def cmd_hilbert(cfg: RunConfig):
    rows = []
    for d, m in cfg.cells():
        cover = CoverDatum(d, m)
        marks = {"h20": cover.h20_degree, "h11_prim": cover.h11_degree,
                 "h1_theta0": cover.theta_degree}
        order = cfg.order if cfg.order is not None else max(cover.h11_degree, cover.theta_degree)
        if order < 0:
            raise ConfigError("truncation order must be nonnegative")
        coeffs = milnor_hilbert_series(cover, order)
        for k, c in enumerate(coeffs):
            rows.append({
                "d": d, "m": m, "k": k, "coeff": c,
                "marks": ",".join(name for name, deg in marks.items() if deg == k),
            })
    return rows, EXIT_OK


COMMANDS = {
    "hodge": cmd_hodge,
    "picard-check": cmd_picard_check,
    "seshadri": cmd_seshadri,
    "table": cmd_table,
    "hilbert": cmd_hilbert,
}


# ---------------------------------------------------------------------------
# rendering


def _flatten(row: dict, prefix: str = "") -> dict:
    out = {}
    for key, value in row.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            out[name] = json.dumps(value, sort_keys=True, separators=(",", ":"))
        else:
            out[name] = value
    return out


def _columns(rows: list[dict]) -> list[str]:
    cols: list[str] = []
    for r in rows:
        cols.extend(k for k in r if k not in cols)
    return cols


def render(cfg: RunConfig, rows: list[dict]) -> str:
    provenance = cfg.provenance()
    if cfg.format == "json":
        return json.dumps({"config": provenance, "results": rows}, indent=2, sort_keys=True) + "\n"
    flat = [_flatten(r) for r in rows]
    cols = _columns(flat)
    header = json.dumps(provenance, sort_keys=True)
    if cfg.format == "csv":
        buf = io.StringIO()
        buf.write(f"# config: {header}\n")
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
        return buf.getvalue()
    lines = [f"<!-- config: {header} -->", "", "| " + " | ".join(cols) + " |",
             "|" + "---|" * len(cols)]
    for r in flat:
        lines.append("| " + " | ".join(str(r.get(c, "")) for c in cols) + " |")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclicplane", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--d", required=True, help="cover degree, e.g. 3 or 2..4")
        p.add_argument("--m", required=True, help="weight of w, e.g. 3 or 3..6")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
        p.add_argument("--format", choices=("json", "csv", "md"), default="json")
        p.add_argument("--output", help="write here instead of stdout")
        if name in ("hodge",):
            p.add_argument("--f", help="'fermat', 'random' or a polynomial JSON file; "
                                       "omit for the general-f series values")
        if name == "hilbert":
            p.add_argument("--order", type=int)
        if name == "picard-check":
            p.add_argument("--attempts", type=int, default=1,
                           help="resample f with seeds seed, seed+1, ...")
            p.add_argument("--cross-prime", type=int,
                           help="repeat the certificates over a second prime")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command, d=args.d, m=args.m, seed=args.seed,
            prime=args.prime, format=args.format, f=getattr(args, "f", None),
            output=args.output, order=getattr(args, "order", None),
            attempts=getattr(args, "attempts", 1),
            cross_prime=getattr(args, "cross_prime", None),
        )
        check_prime(cfg.prime)
        if cfg.attempts < 1:
            raise ConfigError("--attempts must be positive")
        cfg.cells()
        rows, code = COMMANDS[cfg.command](cfg)
    except ValueError as exc:
        # hypothesis violations and invalid configurations alike
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    text = render(cfg, rows)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

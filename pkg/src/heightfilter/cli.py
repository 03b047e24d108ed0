"""Command-line front-end: ``heightfilter {classify,sweep,verify,table}``."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

from . import predictor, tables
from .core import SystemLabel, build
from .dm import compute_dm
from .dynkin import render_x0
from .errors import ConstructionError, DomainError, InvariantError
from .subsystem import classify, dagger_parts, is_levi_type, r_of_m
from .subsystem import to_json as subsystem_json

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

GRID_BOUNDS = {"A": (1, 30), "B": (2, 30), "C": (2, 30), "D": (4, 31), "E": (6, 8), "F": (4, 4), "G": (2, 2)}


class UsageError(Exception):
    pass


def classification(label: SystemLabel, m: int) -> dict:
    sub = r_of_m(build(label), m)
    out = subsystem_json(sub)
    parts = dagger_parts(sub)
    out["x_dagger"] = parts[0].render() if parts else None
    out["x_zero"] = render_x0(parts[1]) if parts else None
    if sub.is_empty:
        out.update({"d": None, "evaluations": None})
    else:
        rep = compute_dm(sub).to_json()
        out["d"] = rep["d"]
        out["evaluations"] = rep["evaluations"]
    return out


def classification_line(c: dict) -> str:
    s = f"{c['system']} m={c['m']}: |R+|={c['cardinality']}, type {c['type']}"
    if c["x_dagger"] is not None:
        s += f", X0={c['x_zero']}"
    s += f", levi={'true' if c['levi'] else 'false'}"
    if c["d"] is not None:
        s += f", d={c['d']}"
    if c["delta"] is not None:
        s += ", delta=(" + " ".join(map(str, c["delta"])) + ")"
    return s


def grid(families: Sequence[str], min_rank: int | None, max_rank: int | None) -> list[tuple[SystemLabel, int]]:
    """Cells ``(label, m)`` with ``2 <= m < h``; ranks are true ranks."""
    cells = []
    for fam in families:
        lo, hi = GRID_BOUNDS[fam]
        if min_rank is not None:
            lo = max(lo, min_rank)
        if max_rank is not None:
            hi = min(hi, max_rank)
        for r in range(lo, hi + 1):
            if fam == "E" and r not in (6, 7, 8):
                continue
            lab = SystemLabel.d(r) if fam == "D" else SystemLabel(fam, r)
            h = build(lab).coxeter_h
            cells.extend((lab, m) for m in range(2, h))
    return cells


def verify_cell(cell: tuple[SystemLabel, int]) -> dict:
    label, m = cell
    sub = r_of_m(build(label), m)
    ty = classify(sub)
    d = compute_dm(sub).d
    levi = is_levi_type(sub)
    pred = predictor.predict(label, m)
    parts = dagger_parts(sub)
    problems = []
    if pred.type != ty:
        problems.append(f"type {ty} != predicted {pred.type}")
    if pred.d != d:
        problems.append(f"d {d} != predicted {pred.d}")
    if pred.levi != levi:
        problems.append(f"levi {levi} != predicted {pred.levi}")
    if pred.delta is not None and (sub.delta is None or sub.delta.coeffs != pred.delta):
        problems.append(f"delta {sub.delta} != predicted {pred.delta}")
    if parts is not None and (parts[0] != pred.x_dagger or parts[1] != pred.x_zero):
        problems.append(f"X†/X0 {parts[0].render()}/{render_x0(parts[1])} differ from prediction")
    return {
        "system": label.name,
        "m": m,
        "type": ty.render(),
        "d": d,
        "levi": levi,
        "source": pred.source,
        "status": "PASS" if not problems else "FAIL",
        "problems": problems,
    }


def _map(fn, items: list, jobs: int) -> list:
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=16))


def _families(arg: str | None) -> list[str]:
    if not arg:
        return list("ABCDEFG")
    fams = [f.strip().upper() for f in arg.split(",") if f.strip()]
    bad = [f for f in fams if f not in GRID_BOUNDS]
    if bad:
        raise UsageError(f"unknown family {bad[0]!r}")
    return fams


def reconciliation(cells: Iterable[tuple[SystemLabel, int]]) -> list[dict]:
    """Check the single-formula exponent against the split table on B/D non-Levi cells."""
    out = []
    for lab, m in cells:
        if lab.family in "BD" and m % 2 == 0 and lab.rank >= 3 * (m // 2):
            out.append(predictor.bd_reconciliation(lab.rank, m) | {"system": lab.name})
    return out


def cmd_classify(args, out) -> int:
    label = SystemLabel.parse(args.system)
    if args.m < 1:
        raise UsageError("--m must be a positive integer")
    c = classification(label, args.m)
    if args.format == "json":
        out.write(json.dumps(c, ensure_ascii=False, sort_keys=True) + "\n")
    else:
        out.write(classification_line(c) + "\n")
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    cells = grid(_families(args.family), args.min_rank, args.max_rank)
    results = _map(_classify_cell, cells, args.jobs)
    if args.format == "json":
        out.write(json.dumps(results, ensure_ascii=False, sort_keys=True) + "\n")
    else:
        for c in results:
            out.write(classification_line(c) + "\n")
    return EXIT_OK


def _classify_cell(cell):
    return classification(*cell)


def cmd_verify(args, out) -> int:
    cells = grid(_families(args.family), args.min_rank, args.max_rank)
    results = _map(verify_cell, cells, args.jobs)
    recon = reconciliation(cells)
    failed = [r for r in results if r["status"] != "PASS"]
    n_pass = len(results) - len(failed)
    recon_ok = all(r["agree"] for r in recon)
    if args.format == "json":
        out.write(
            json.dumps(
                {
                    "cells": results,
                    "summary": {"cells": len(results), "pass": n_pass, "fail": len(failed)},
                    "bd_reconciliation": {"checked": len(recon), "agree": recon_ok},
                },
                ensure_ascii=False,
                sort_keys=True,
            )
            + "\n"
        )
    else:
        for r in results:
            line = f"{r['status']} {r['system']} m={r['m']}: {r['type']}, d={r['d']}, levi={str(r['levi']).lower()}"
            if r["problems"]:
                line += " [" + "; ".join(r["problems"]) + "]"
            out.write(line + "\n")
        if recon:
            out.write(
                f"B/D d_m exponent reconciliation: {len(recon)} non-Levi cells, "
                f"{'all agree' if recon_ok else 'DISAGREEMENT'}\n"
            )
        summary = f"{len(results)} cells, {n_pass} PASS"
        if failed:
            summary += f", {len(failed)} FAIL: " + ", ".join(f"{r['system']} m={r['m']}" for r in failed)
        out.write(summary + "\n")
    return EXIT_OK if not failed and recon_ok else EXIT_MISMATCH


def cmd_table(args, out) -> int:
    if args.id not in tables.TABLE_IDS:
        raise UsageError(f"unknown table id {args.id!r}; choose from {', '.join(tables.TABLE_IDS)}")
    if args.format == "json":
        out.write(json.dumps(tables.table_data(args.id), ensure_ascii=False, sort_keys=True) + "\n")
    else:
        out.write(tables.render_text(args.id))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heightfilter", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("classify", help="classify R(m) for one system")
    c.add_argument("--system", required=True, help="e.g. E8, B5, D7 (true rank)")
    c.add_argument("--m", type=int, required=True)
    common(c)
    c.set_defaults(func=cmd_classify)

    for verb, func, helptext in (
        ("sweep", cmd_sweep, "classify every cell of a grid"),
        ("verify", cmd_verify, "compare computed and predicted classifications"),
    ):
        s = sub.add_parser(verb, help=helptext)
        s.add_argument("--family", help="comma-separated families (default: all)")
        s.add_argument("--min-rank", type=int)
        s.add_argument("--max-rank", type=int)
        s.add_argument("--jobs", type=int, default=1)
        common(s)
        s.set_defaults(func=func)

    t = sub.add_parser("table", help="regenerate a table from computed data")
    t.add_argument("--id", required=True)
    common(t)
    t.set_defaults(func=cmd_table)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, ConstructionError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as e:
        print(f"internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Acceptance criteria 1-8, one PASS/FAIL line each (exact equality throughout).

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import io
import sys
import time
from functools import lru_cache
from pathlib import Path

from heightfilter.cli import grid, main, verify_cell
from heightfilter.core import SystemLabel, build, dual_partition
from heightfilter.dm import compute_dm
from heightfilter.dynkin import DynkinType, render_x0
from heightfilter.predictor import predict
from heightfilter.subsystem import classify, dagger_parts, is_levi_type, r_of_m, rm_is_partial_base
from heightfilter.weyl import weyl_orbit_levi_oracle

try:
    from conftest import ACCEPTANCE
except ImportError:  # direct script run
    ACCEPTANCE = {}

GOLDEN = Path(__file__).parent / "golden"

# (system, m) -> (type of Gamma(m), X dagger, X0, d, delta coefficients)
EXCEPTIONAL = {
    ("E6", 2): ("A5 + A1†", "A1", "∅", 2, (0, 1, 1, 1, 1, 0)),
    ("E7", 2): ("A7†", "A7", "A6", 8, (0, 1, 1, 1, 1, 0, 0)),
    ("E8", 2): ("D8†", "D8", "D7", 16, (0, 1, 1, 1, 1, 0, 0, 0)),
    ("E6", 3): ("2A2 + A2†", "A2", "A1", 3, (1, 1, 1, 1, 1, 1)),
    ("E7", 3): ("A5 + A2†", "A2", "A1", 3, (1, 1, 1, 1, 1, 1, 0)),
    ("E8", 3): ("A8†", "A8", "A7", 9, (1, 1, 1, 1, 1, 1, 0, 0)),
    ("E8", 4): ("D5 + A3†", "A3", "A2", 4, (0, 1, 1, 2, 1, 1, 1, 1)),
    ("E8", 5): ("A4 + A4†", "A4", "A3", 5, (1, 1, 2, 2, 1, 1, 1, 1)),
    ("E8", 8): ("A3 + A2 + A1 + A1†", "A1", "∅", 2, (1, 1, 2, 3, 3, 3, 2, 1)),
    ("F4", 2): ("C3 + A1†", "A1", "∅", 2, (1, 1, 2, 0)),
    ("F4", 3): ("A2(s) + A2†", "A2", "A1", 3, (1, 1, 2, 2)),
    ("G2", 2): ("A1(s) + A1†", "A1", "∅", 2, (3, 1)),
}


def record(n: int, ok: bool, detail: str) -> bool:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE[n] = line
    print(line)
    return ok


def _observed(lab: SystemLabel, m: int):
    sub = r_of_m(build(lab), m)
    parts = dagger_parts(sub)
    return (
        classify(sub).render(),
        parts[0].render() if parts else None,
        render_x0(parts[1]) if parts else None,
        compute_dm(sub).d,
        sub.delta.coeffs if sub.delta is not None else None,
        is_levi_type(sub),
    )


def _bd_expected(family: str, n: int, m: int):
    k = m // 2
    q = (n - k) // m
    x_dag, x_zero = {1: ("A1", "∅"), 2: ("A3", "A2")}.get(q, (f"D{q + 1}", f"A{q}"))
    if family == "D":
        delta = (1, 1) + (2,) * (k - 1) + (1,) * (2 * k) + (0,) * (n - 3 * k)
    else:
        delta = (2,) * k + (1,) * (2 * k) + (0,) * (n - 3 * k)
    return x_dag, x_zero, 2**q, delta


def criterion_1() -> bool:
    t0 = time.perf_counter()
    bad = []
    for (name, m), (ty, xd, x0, d, delta) in EXCEPTIONAL.items():
        if _observed(SystemLabel.parse(name), m) != (ty, xd, x0, d, delta, False):
            bad.append(f"{name} m={m}")
    n_bd = 0
    for n in range(3, 31):
        for k in range(1, n // 3 + 1):
            m = 2 * k
            for lab in (SystemLabel("B", n), SystemLabel.d(n + 1)):
                xd, x0, d, delta = _bd_expected(lab.family, n, m)
                got = _observed(lab, m)
                ty = predict(lab, m).type.render()
                n_bd += 1
                if got != (ty, xd, x0, d, delta, False):
                    bad.append(f"{lab.name} m={m}")
    dt = time.perf_counter() - t0
    return record(1, not bad and dt < 10,
                  f"{len(EXCEPTIONAL)} exceptional + {n_bd} B/D cells, {len(bad)} mismatches, {dt:.2f} s (limit 10 s)"
                  + (f" {bad[:5]}" if bad else ""))


def _labels_up_to_rank(r: int):
    for n in range(1, r + 1):
        yield SystemLabel("A", n)
    for n in range(2, r + 1):
        yield SystemLabel("B", n)
        yield SystemLabel("C", n)
    for n in range(4, r + 1):
        yield SystemLabel.d(n)
    for n in (6, 7, 8):
        yield SystemLabel("E", n)
    yield SystemLabel("F", 4)
    yield SystemLabel("G", 2)


def _closed_form_pi(lab: SystemLabel, k: int) -> int | None:
    n = lab.rank
    if lab.family == "A":
        return max(n + 1 - k, 0)
    if lab.family == "D":
        return n + 1 - k // 2 if k <= n else max(n - k // 2, 0)
    if lab.family in "BC":
        return max(n - k // 2, 0)
    return None


def criterion_2() -> bool:
    t0 = time.perf_counter()
    bad, checks = [], 0
    for lab in _labels_up_to_rank(12):
        rs = build(lab)
        for k in range(1, rs.coxeter_h + 2):
            checks += 1
            if rs.pi(k) != dual_partition(rs.exponents, k):
                bad.append(f"{lab.name} k={k} dual")
            cf = _closed_form_pi(lab, k)
            if cf is not None and k < rs.coxeter_h and rs.pi(k) != cf:
                bad.append(f"{lab.name} k={k} closed form")
    dt = time.perf_counter() - t0
    return record(2, not bad and dt < 5, f"{checks} (system, k) checks, {len(bad)} mismatches, {dt:.2f} s (limit 5 s)"
                  + (f" {bad[:5]}" if bad else ""))


CARDINALITIES = {
    "E6": [16, 9, 7, 5],
    "E7": [28, 18, 13, 10, 7, 6, 5, 4],
    "E8": [56, 36, 26, 20, 16, 14, 11, 10, 8, 8, 6, 6, 5],
}


def criterion_3() -> bool:
    bad = []
    for name, values in CARDINALITIES.items():
        rs = build(SystemLabel.parse(name))
        got = [r_of_m(rs, m).cardinality for m in range(2, 2 + len(values))]
        if got != values:
            bad.append(f"{name}: {got}")
    n = sum(map(len, CARDINALITIES.values()))
    return record(3, not bad, f"{n} table entries, {len(bad)} mismatched rows" + (f" {bad}" if bad else ""))


@lru_cache(maxsize=1)
def _grid_results():
    t0 = time.perf_counter()
    results = [verify_cell(c) for c in grid(list("ABCDEFG"), None, None)]
    return results, time.perf_counter() - t0


def criterion_4() -> bool:
    results, dt = _grid_results()
    bad = [f"{r['system']} m={r['m']}" for r in results if r["status"] != "PASS"]
    return record(4, not bad and dt < 60, f"{len(results)} grid cells, {len(bad)} mismatches, {dt:.1f} s (limit 60 s)"
                  + (f" {bad[:5]}" if bad else ""))


def criterion_5() -> bool:
    bad, non_levi, levi = [], 0, 0
    for lab, m in grid(list("ABCDEFG"), None, None):
        sub = r_of_m(build(lab), m)
        rep = compute_dm(sub)
        gamma_is_slice = set(sub.base) == set(sub.slice_m)
        if gamma_is_slice:
            levi += 1
            ok = rep.d_product == rep.d_heights == 1 and rep.d_oracle == 1
        else:
            non_levi += 1
            ok = rep.d_product == rep.d_heights == rep.d_oracle and rep.d_oracle > 1
        if not ok or gamma_is_slice != is_levi_type(sub):
            bad.append(f"{lab.name} m={m}")
    return record(5, not bad, f"{non_levi} non-Levi cells with three equal evaluations, {levi} Levi cells with d = 1, "
                  f"{len(bad)} failures" + (f" {bad[:5]}" if bad else ""))


ORACLE_SYSTEMS = ["G2", "F4", "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "E6"]


def criterion_6() -> bool:
    bad, cells = [], 0
    for name in ORACLE_SYSTEMS:
        rs = build(SystemLabel.parse(name))
        for m in range(1, rs.coxeter_h + 1):
            sub = r_of_m(rs, m)
            cells += 1
            if is_levi_type(sub) != weyl_orbit_levi_oracle(sub):
                bad.append(f"{name} m={m}")
    return record(6, not bad, f"{cells} cells over {len(ORACLE_SYSTEMS)} systems, {len(bad)} disagreements"
                  + (f" {bad}" if bad else ""))


def criterion_7() -> bool:
    cells = grid(list("ABCDEFG"), None, None)
    bad = [f"{lab.name} m={m}" for lab, m in cells if not rm_is_partial_base(build(lab), m)]
    return record(7, not bad, f"{len(cells)} grid cells, {len(bad)} failures" + (f" {bad[:5]}" if bad else ""))


def criterion_8() -> bool:
    bad = []
    for tid in ("heights", "cardinalities", "f4", "thm1"):
        buf = io.StringIO()
        code = main(["table", "--id", tid], out=buf)
        if code != 0 or buf.getvalue().encode("utf-8") != (GOLDEN / f"{tid}.txt").read_bytes():
            bad.append(tid)
    return record(8, not bad, f"4 tables byte-compared, {len(bad)} differ" + (f" {bad}" if bad else ""))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def test_criterion_1_exceptional_cases():
    assert criterion_1()


def test_criterion_2_height_counts():
    assert criterion_2()


def test_criterion_3_cardinalities():
    assert criterion_3()


def test_criterion_4_predictor_equivalence():
    assert criterion_4()


def test_criterion_5_dm_triple_agreement():
    assert criterion_5()


def test_criterion_6_levi_oracle():
    assert criterion_6()


def test_criterion_7_partial_base():
    assert criterion_7()


def test_criterion_8_golden_tables():
    assert criterion_8()


if __name__ == "__main__":
    sys.exit(0 if all([c() for c in CRITERIA]) else 1)

"""Regenerate the classification tables from computed data."""
from __future__ import annotations

from itertools import groupby

from .core import SystemLabel, build
from .dm import compute_dm
from .dynkin import render_x0
from .subsystem import classify, dagger_parts, r_of_m

TABLE_IDS = ("thm1", "e-prop", "cardinalities", "heights", "f4")

E_LABELS = [SystemLabel("E", r) for r in (6, 7, 8)]


def _ranges(values: list[tuple[int, int]]) -> list[tuple[str, int]]:
    out = []
    for v, grp in groupby(values, key=lambda kv: kv[1]):
        ks = [k for k, _ in grp]
        out.append((f"{ks[0]}" if len(ks) == 1 else f"{ks[0]}-{ks[-1]}", v))
    return out


def heights_data() -> dict:
    """Height ranges and root counts for E6, E7, E8, starting at height 2."""
    data = {}
    for lab in E_LABELS:
        rs = build(lab)
        vals = [(k, rs.pi(k)) for k in range(2, rs.coxeter_h)]
        data[lab.name] = [{"heights": h, "count": v} for h, v in _ranges(vals)]
    return data


def cardinalities_data() -> dict:
    rows = []
    for m in range(2, 15):
        row = {"m": m}
        for lab in E_LABELS:
            rs = build(lab)
            row[lab.name] = r_of_m(rs, m).cardinality if 2 * m <= rs.coxeter_h else None
        rows.append(row)
    return {"rows": rows}


_F4_NAMES = "abcd"


def f4_root_name(coeffs) -> str:
    parts = []
    for c, name in zip(coeffs, _F4_NAMES):
        if c:
            parts.append(name if c == 1 else f"{c}{name}")
    return "+".join(parts)


def f4_data() -> dict:
    rs = build(SystemLabel("F", 4))
    rows = []
    for k in range(2, rs.coxeter_h):
        roots = rs.roots_of_height(k)
        rows.append(
            {
                "height": k,
                "long": [f4_root_name(r.coeffs) for r in roots if r.long],
                "short": [f4_root_name(r.coeffs) for r in roots if not r.long],
            }
        )
    return {"rows": rows}


def _non_levi_cells():
    for n in range(3, 10):
        for fam in "BD":
            lab = SystemLabel(fam, n)
            for k in range(1, n // 3 + 1):
                yield lab, 2 * k
    for lab in E_LABELS:
        for m in (2, 3):
            yield lab, m
    for m in (4, 5, 8):
        yield SystemLabel("E", 8), m
    yield SystemLabel("F", 4), 2
    yield SystemLabel("F", 4), 3
    yield SystemLabel("G", 2), 2


def _cell(lab: SystemLabel, m: int) -> dict:
    sub = r_of_m(build(lab), m)
    rep = compute_dm(sub)
    parts = dagger_parts(sub)
    return {
        "system": lab.name,
        "m": m,
        "delta": list(sub.delta.coeffs) if sub.delta is not None else None,
        "type": classify(sub).render(),
        "x_dagger": parts[0].render() if parts else None,
        "x_zero": render_x0(parts[1]) if parts else None,
        "d": rep.d,
    }


def thm1_data() -> dict:
    return {"rows": [_cell(lab, m) for lab, m in _non_levi_cells()]}


def e_prop_data() -> dict:
    rows = []
    for lab in E_LABELS:
        h = build(lab).coxeter_h
        for m in range(2, h):
            rows.append(_cell(lab, m))
    return {"rows": rows}


def table_data(table_id: str) -> dict:
    return {
        "thm1": thm1_data,
        "e-prop": e_prop_data,
        "cardinalities": cardinalities_data,
        "heights": heights_data,
        "f4": f4_data,
    }[table_id]()


def _grid(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header).rstrip(), "  ".join("-" * w for w in widths)]
    lines += [fmt.format(*map(str, r)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def render_text(table_id: str) -> str:
    data = table_data(table_id)
    if table_id == "heights":
        out = []
        for name, rows in data.items():
            out.append(name + "\n" + _grid(["height", "roots"], [[r["heights"], r["count"]] for r in rows]))
        return "\n".join(out)
    if table_id == "cardinalities":
        names = [lab.name for lab in E_LABELS]
        rows = [[r["m"]] + [("" if r[n] is None else r[n]) for n in names] for r in data["rows"]]
        return _grid(["m"] + names, rows)
    if table_id == "f4":
        rows = [[r["height"], "  ".join(r["long"]), "  ".join(r["short"])] for r in data["rows"]]
        return _grid(["height", "long roots", "short roots"], rows)
    rows = [
        [
            r["system"],
            r["m"],
            " ".join(map(str, r["delta"])) if r["delta"] else "",
            r["type"],
            r["x_dagger"] or "",
            r["x_zero"] if r["x_zero"] is not None else "",
            r["d"],
        ]
        for r in data["rows"]
    ]
    return _grid(["R", "m", "delta", "Gamma(m)", "X†", "X0", "d"], rows)

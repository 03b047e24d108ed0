"""Weyl groups as permutations of the signed root set, and the orbit oracle for Levi type."""
from __future__ import annotations

import os
from functools import lru_cache
from itertools import combinations
from math import factorial

import numpy as np

from .core import RootSystem
from .errors import BudgetError
from .subsystem import HeightSubsystem

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "HEIGHTFILTER_ORBIT_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def weyl_order(rs: RootSystem) -> int:
    """``|W|`` from the classical formula (product of ``exponent + 1``)."""
    out = 1
    for e in rs.exponents:
        out *= e + 1
    return out


def classical_weyl_order(family: str, true_rank: int) -> int:
    n = true_rank
    if family == "A":
        return factorial(n + 1)
    if family in "BC":
        return 2**n * factorial(n)
    if family == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}[
        (family, n)
    ]


def signed_roots(rs: RootSystem) -> np.ndarray:
    """Positive roots followed by negatives; row ``i + N`` is ``-row i``."""
    pos = rs.pos_array
    return np.vstack([pos, -pos])


@lru_cache(maxsize=None)
def simple_reflections(rs: RootSystem) -> tuple[np.ndarray, ...]:
    """Each simple reflection as a permutation of :func:`signed_roots` indices."""
    roots = signed_roots(rs)
    index = {row.tobytes(): i for i, row in enumerate(roots)}
    cartan = np.array(rs.cartan, dtype=np.int64)
    gens = []
    for i in range(rs.rank):
        images = roots.copy()
        images[:, i] -= roots @ cartan[i]
        gens.append(np.array([index[row.tobytes()] for row in images], dtype=np.int32))
    return tuple(gens)


def enumerate_weyl_group(rs: RootSystem, budget: int | None = None) -> np.ndarray:
    """All elements of W as rows of a permutation array (breadth-first closure)."""
    budget = default_budget() if budget is None else budget
    order = weyl_order(rs)
    if order > budget:
        raise BudgetError(
            f"|W({rs.name})| = {order} exceeds the orbit budget {budget}; "
            f"use is_levi_type instead (or raise {BUDGET_ENV})"
        )
    return _enumerate(rs)


@lru_cache(maxsize=4)
def _enumerate(rs: RootSystem) -> np.ndarray:
    gens = simple_reflections(rs)
    ident = np.arange(2 * len(rs.positive_roots), dtype=np.int32)
    seen = {ident.tobytes()}
    elements = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = s[w]
                key = ws.tobytes()
                if key not in seen:
                    seen.add(key)
                    elements.append(ws)
                    nxt.append(ws)
        frontier = nxt
    out = np.array(elements)
    out.setflags(write=False)
    return out


def standard_subsystems(rs: RootSystem) -> dict[int, set[frozenset[int]]]:
    """Signed index sets ``R_I`` for every subset I of the simple roots, keyed by size."""
    roots = signed_roots(rs)
    support = roots != 0
    out: dict[int, set[frozenset[int]]] = {}
    r = rs.rank
    for k in range(r + 1):
        for I in combinations(range(r), k):
            outside = [j for j in range(r) if j not in I]
            mask = ~support[:, outside].any(axis=1) if outside else np.ones(len(roots), bool)
            idx = frozenset(np.flatnonzero(mask).tolist())
            out.setdefault(len(idx), set()).add(idx)
    return out


def weyl_orbit_levi_oracle(sub: HeightSubsystem, budget: int | None = None) -> bool:
    """True iff some w in W maps R(m) onto R_I for some I ⊆ Δ (exhaustive)."""
    rs = sub.parent
    group = enumerate_weyl_group(rs, budget)
    if sub.is_empty:
        return True
    n = len(rs.positive_roots)
    idx = [rs.index(b) for b in sub.positive]
    members = np.array(idx + [i + n for i in idx], dtype=np.int64)
    targets = standard_subsystems(rs).get(len(members), set())
    if not targets:
        return False
    images = np.sort(group[:, members], axis=1)
    for row in np.unique(images, axis=0):
        if frozenset(row.tolist()) in targets:
            return True
    return False

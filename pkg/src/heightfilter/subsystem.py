"""Height-multiple subsystems R(m), their bases, types and Levi test."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, Sequence

import numpy as np

from . import linalg
from .core import Coeffs, Root, RootSystem
from .dynkin import ComponentLabel, DynkinType, identify
from .errors import DomainError, InvariantError


@dataclass(frozen=True, eq=False)
class HeightSubsystem:
    parent: RootSystem
    m: int
    positive: tuple[Root, ...]
    slice_m: tuple[Root, ...]
    base: tuple[Root, ...]
    sub_height: Dict[Coeffs, int] = field(repr=False)
    delta: Root | None = None

    @property
    def is_empty(self) -> bool:
        return not self.positive

    @property
    def cardinality(self) -> int:
        """``|R^+(m)|``."""
        return len(self.positive)

    def contains(self, coeffs: Sequence[int]) -> bool:
        c = tuple(coeffs)
        r = self.parent.lookup(c)
        return r is not None and r.height % self.m == 0

    def __repr__(self) -> str:
        return f"HeightSubsystem({self.parent.name}, m={self.m}, |R+(m)|={len(self.positive)})"


@lru_cache(maxsize=4096)
def span_solver(rows: tuple[Coeffs, ...]) -> "_SpanSolver":
    return _SpanSolver(rows)


class _SpanSolver:
    """Exact coordinates with respect to a linearly independent set of roots.

    Picks pivot columns ``c`` so that ``B[:, c]`` is invertible and stores an
    integer matrix ``adj`` and scale ``L`` with ``inv(B[:, c]) = adj / L``.
    Integer arithmetic only on the hot path.
    """

    def __init__(self, rows: Sequence[Sequence[int]]):
        self.B = np.array(rows, dtype=np.int64).reshape(len(rows), -1)
        b = len(rows)
        if b == 0:
            self.cols, self.adj, self.L = [], np.zeros((0, 0), dtype=np.int64), 1
            return
        # pivot columns of B give b independent coordinates
        _, piv = linalg.row_echelon(self.B.tolist())
        if len(piv) != b:
            raise InvariantError("base is not linearly independent")
        self.cols = piv
        inv = linalg.inverse(self.B[:, piv].tolist())
        L = lcm(*(x.denominator for row in inv for x in row))
        self.L = L
        self.adj = np.array([[int(x * L) for x in row] for row in inv], dtype=np.int64)

    def coordinates(self, vecs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Scaled coordinates ``L * x`` and a mask of rows lying in the span."""
        vecs = np.asarray(vecs, dtype=np.int64)
        if not self.cols:
            return np.zeros((len(vecs), 0), dtype=np.int64), ~vecs.any(axis=1)
        num = vecs[:, self.cols] @ self.adj
        in_span = (num @ self.B == self.L * vecs).all(axis=1)
        return num, in_span


def _positive_root_keys(arr: np.ndarray) -> set[bytes]:
    return {row.tobytes() for row in arr}


def _extract_base(arr: np.ndarray) -> list[int]:
    """Indices of rows not expressible as a sum of two rows."""
    keys = _positive_root_keys(arr)
    out = []
    for i, beta in enumerate(arr):
        diff = beta - arr
        mask = (diff >= 0).all(axis=1) & diff.any(axis=1)
        if not any(row.tobytes() in keys for row in diff[mask]):
            out.append(i)
    return out


@lru_cache(maxsize=None)
def r_of_m(rs: RootSystem, m: int) -> HeightSubsystem:
    """The subsystem of roots whose height is a multiple of ``m``."""
    if not isinstance(m, int) or m <= 0:
        raise DomainError(f"m must be a positive integer, got {m!r}")
    positive = tuple(r for r in rs.positive_roots if r.height % m == 0)
    slice_m = tuple(r for r in positive if r.height == m)
    if not positive:
        return HeightSubsystem(rs, m, (), (), (), {}, None)

    arr = np.array([r.coeffs for r in positive], dtype=np.int64)
    base = tuple(positive[i] for i in _extract_base(arr))
    extra = [g for g in base if g.height != m]
    if len(extra) > 1:
        raise InvariantError(f"{rs.name}, m={m}: more than one base root outside R_m")
    delta = extra[0] if extra else None
    if delta is not None and delta.height != 2 * m:
        raise InvariantError(f"{rs.name}, m={m}: extra base root has height {delta.height}")
    if not set(slice_m) <= set(base):
        raise InvariantError(f"{rs.name}, m={m}: R_m is not contained in the base")

    solver = span_solver(tuple(g.coeffs for g in base))
    num, in_span = solver.coordinates(arr)
    if not in_span.all() or (num % solver.L).any():
        raise InvariantError(f"{rs.name}, m={m}: R+(m) is not integral over the base")
    coords = num // solver.L
    if (coords < 0).any():
        raise InvariantError(f"{rs.name}, m={m}: negative coordinates over the base")
    sub_height = {r.coeffs: int(s) for r, s in zip(positive, coords.sum(axis=1))}
    return HeightSubsystem(rs, m, positive, slice_m, base, sub_height, delta)


def base_of(sub: HeightSubsystem) -> list[Root]:
    """Elements of R^+(m) that are not the sum of two elements of R^+(m)."""
    if sub.is_empty:
        return []
    arr = np.array([r.coeffs for r in sub.positive], dtype=np.int64)
    return [sub.positive[i] for i in _extract_base(arr)]


def base_cartan(sub: HeightSubsystem) -> list[list[int]]:
    return sub.parent.cartan_block(sub.base).tolist()


def _components(rs: RootSystem, base: Sequence[Root], delta: Root | None):
    """Connected components of the base as ``(member indices, label)``."""
    n = len(base)
    cart = rs.cartan_block(base).tolist() if n else []
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and cart[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comp.sort()
        sub_cart = [[cart[i][j] for j in comp] for i in comp]
        lengths = [rs.norm2(base[i]) for i in comp]
        fam, rank, short = identify(sub_cart, lengths, [not base[i].long for i in comp])
        dag = delta is not None and any(base[i] == delta for i in comp)
        out.append((comp, ComponentLabel(fam, rank, short, dag), sub_cart))
    return out


def classify(sub: HeightSubsystem) -> DynkinType:
    """Normalized Dynkin type of the base, dagger on the component of delta."""
    return DynkinType.of(c for _, c, _ in _components(sub.parent, sub.base, sub.delta))


def dagger_parts(sub: HeightSubsystem):
    """``(X_dagger, X_zero, graph)`` for the component containing delta.

    ``graph`` is the Cartan matrix of X_dagger with delta at index 0.
    Returns ``None`` when there is no delta.
    """
    if sub.delta is None:
        return None
    rs = sub.parent
    for comp, label, cart in _components(rs, sub.base, sub.delta):
        if not label.dagger:
            continue
        members = [sub.base[i] for i in comp]
        d = members.index(sub.delta)
        rest = [g for g in members if g != sub.delta]
        x_zero = DynkinType.of(c for _, c, _ in _components(rs, rest, None))
        order = [d] + [i for i in range(len(comp)) if i != d]
        graph = [[cart[i][j] for j in order] for i in order]
        return label.plain(), x_zero, graph
    raise InvariantError("delta not found in any component")


def _span_count(rs: RootSystem, gens: Sequence[Root]) -> tuple[np.ndarray, np.ndarray]:
    solver = span_solver(tuple(g.coeffs for g in gens))
    num, in_span = solver.coordinates(rs.pos_array)
    return num[in_span], np.flatnonzero(in_span)


def is_levi_type(sub: HeightSubsystem) -> bool:
    """``R ∩ span_Q(R(m)) == R(m)``."""
    if sub.is_empty:
        return True
    _, idx = _span_count(sub.parent, sub.base)
    return len(idx) == len(sub.positive)


def rm_is_partial_base(rs: RootSystem, m: int) -> bool:
    """Whether the roots of height ``m`` form a base of ``R ∩ span(R_m)``."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    rm = rs.roots_of_height(m)
    if not rm:
        return True
    if linalg.rank([r.coeffs for r in rm]) != len(rm):
        return False
    for i, b in enumerate(rm):
        for g in rm[i + 1:]:
            if rs.cartan_pairing(b, g) > 0:
                return False
            if rs.is_root(tuple(x - y for x, y in zip(b.coeffs, g.coeffs))):
                return False
    solver = span_solver(tuple(r.coeffs for r in rm))
    num, in_span = solver.coordinates(rs.pos_array)
    coords = num[in_span]
    if (coords % solver.L).any():
        return False
    # every positive root in the span must be a one-signed combination
    return bool(((coords >= 0).all(axis=1) | (coords <= 0).all(axis=1)).all())


def to_json(sub: HeightSubsystem) -> dict:
    return {
        "system": sub.parent.name,
        "m": sub.m,
        "cardinality": sub.cardinality,
        "base": [list(g.coeffs) for g in sub.base],
        "type": classify(sub).render(),
        "levi": is_levi_type(sub),
        "delta": list(sub.delta.coeffs) if sub.delta is not None else None,
    }

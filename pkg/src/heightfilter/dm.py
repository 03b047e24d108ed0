"""The constant d_m, evaluated three independent ways."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np

from . import linalg
from .core import Root, RootSystem
from .dynkin import ComponentLabel, DynkinType
from .errors import DomainError, InvariantError, UnsupportedPatternError
from .subsystem import HeightSubsystem, classify, dagger_parts


@dataclass(frozen=True)
class WeightVector:
    """An element of V* written in simple-root coordinates through the form."""

    coords: tuple[Fraction, ...]

    def pair(self, rs: RootSystem, beta: Root | Sequence[int]) -> Fraction:
        c = beta.coeffs if isinstance(beta, Root) else beta
        return sum((w * x for w, x in zip(self.functional(rs), c) if x), Fraction(0))

    def functional(self, rs: RootSystem) -> tuple[Fraction, ...]:
        """Row vector ``F @ coords`` so that pairing with a root is a dot product."""
        f = rs.sym_form
        return tuple(
            sum((f[i][j] * x for j, x in enumerate(self.coords) if x), Fraction(0))
            for i in range(rs.rank)
        )

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, f) -> "WeightVector":
        return WeightVector(tuple(a * f for a in self.coords))


def coroot(rs: RootSystem, beta: Root) -> tuple[Fraction, ...]:
    """``2 beta / (beta, beta)`` in simple-root coordinates."""
    f = 2 / rs.norm2(beta)
    return tuple(c * f for c in beta.coeffs)


def half_sum_of_coroots(rs: RootSystem, roots: Sequence[Root]) -> WeightVector:
    # 2/(b, b) is 1, 2 or 3, so the sum stays integral
    if not roots:
        return WeightVector(tuple(Fraction(0) for _ in range(rs.rank)))
    factors = []
    for length in (rs.long_length, rs.short_length):
        f = 2 / length
        if f.denominator != 1:
            raise InvariantError(f"unexpected squared root length {length}")
        factors.append(int(f))
    weights = np.array([factors[0] if b.long else factors[1] for b in roots], dtype=np.int64)
    acc = weights @ np.array([b.coeffs for b in roots], dtype=np.int64)
    return WeightVector(tuple(Fraction(int(x), 2) for x in acc))


@lru_cache(maxsize=None)
def rho(rs: RootSystem) -> WeightVector:
    return half_sum_of_coroots(rs, rs.positive_roots)


def rho_m(sub: HeightSubsystem) -> WeightVector:
    return half_sum_of_coroots(sub.parent, sub.positive)


def fundamental_coweight(sub: HeightSubsystem) -> WeightVector | None:
    """Element of span(Gamma(m)) pairing to 1 with delta and 0 with the rest."""
    if sub.delta is None:
        return None
    rs, base = sub.parent, sub.base
    gram = [[rs.inner(g.coeffs, h.coeffs) for h in base] for g in base]
    rhs = [Fraction(int(g == sub.delta)) for g in base]
    y = linalg.solve(gram, rhs)
    coords = [Fraction(0)] * rs.rank
    for yj, g in zip(y, base):
        for i, c in enumerate(g.coeffs):
            coords[i] += yj * c
    return WeightVector(tuple(coords))


@dataclass(frozen=True)
class DmReport:
    m: int
    d_product: Fraction
    d_heights: Fraction
    d_oracle: int | None
    node: str | None

    @property
    def d(self) -> int:
        return int(self.d_product)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "evaluations": {
                "product": str(self.d_product),
                "heights": str(self.d_heights),
                "oracle": self.d_oracle,
            },
            "node": self.node,
        }


def dimension_oracle(sub: HeightSubsystem, dtype: DynkinType | None = None) -> tuple[int, str | None]:
    """Closed-form dimension of the fundamental representation at delta.

    Returns ``(dimension, node description)``; ``(1, None)`` without delta.
    """
    parts = dagger_parts(sub)
    if parts is None:
        return 1, None
    x_dag, x_zero, graph = parts
    if dtype is not None and (dtype.dagger is None or dtype.dagger.plain() != x_dag):
        raise InvariantError(f"type {dtype} disagrees with the dagger component {x_dag}")
    q = x_dag.rank
    degree = sum(1 for j in range(1, q) if graph[0][j] != 0)
    if x_dag.family == "A" and degree <= 1:
        expect = DynkinType.of([ComponentLabel("A", q - 1)] if q > 1 else [])
        if x_zero == expect:
            return q + 1, f"end node of A{q}"
    if x_dag.family == "D":
        r = q - 1
        if x_zero == DynkinType.of([ComponentLabel("A", r)]):
            return 2**r, f"spin node of D{q}"
        if x_zero == DynkinType.of([ComponentLabel("D", r)]):
            return 2 * q, f"vector node of D{q}"
    raise UnsupportedPatternError(
        f"{sub.parent.name}, m={sub.m}: delta sits in {x_dag.render()} leaving {x_zero}"
    )


def _pairings(rs: RootSystem, w: WeightVector, rows) -> list[Fraction]:
    """``<w, beta>`` for each row, via one integer matrix product."""
    den = 1
    for x in w.coords:
        den = den * x.denominator // gcd(den, x.denominator)
    wi = [[int(x * den) for x in w.coords]]
    scale, g = rs.scaled_gram(wi, rows)
    return [Fraction(int(v), scale * den) for v in g[0]]


def compute_dm(sub: HeightSubsystem) -> DmReport:
    if sub.is_empty:
        raise DomainError(f"{sub.parent.name}, m={sub.m}: R(m) is empty")
    rs, m = sub.parent, sub.m
    r, rm = rho(rs), rho_m(sub)

    rows = [b.coeffs for b in sub.positive]
    num, den = 1, 1
    hnum, hden = 1, 1
    for beta, a, b in zip(sub.positive, _pairings(rs, r, rows), _pairings(rs, rm, rows)):
        if a != beta.height:
            raise InvariantError(f"<rho, {beta}> = {a} differs from its height")
        if b != sub.sub_height[beta.coeffs]:
            raise InvariantError(f"<rho_m, {beta}> = {b} differs from its subsystem height")
        top = a / m
        num *= top.numerator * b.denominator
        den *= top.denominator * b.numerator
        hnum *= beta.height
        hden *= m * sub.sub_height[beta.coeffs]
    d_product = Fraction(num, den)
    d_heights = Fraction(hnum, hden)

    if d_product != d_heights:
        raise InvariantError(f"d_m evaluations disagree: {d_product} vs {d_heights}")
    if d_product.denominator != 1 or d_product < 1:
        raise InvariantError(f"d_m = {d_product} is not a positive integer")
    oracle, node = dimension_oracle(sub, classify(sub))
    if oracle != d_product:
        raise InvariantError(f"closed-form dimension {oracle} differs from d_m = {d_product}")
    if (d_product == 1) != (set(sub.base) == set(sub.slice_m)):
        raise InvariantError("d_m = 1 must hold exactly when Gamma(m) = R_m")
    return DmReport(m, d_product, d_heights, oracle if sub.delta is not None else 1, node)

"""Reduced irreducible root systems over an integer coefficient lattice.

Every root is stored by its coefficients on the simple roots, in the node
numbering used throughout the package:

* ``A_r``: ``alpha_i = e_{i+1} - e_i`` for ``i = 1..r``;
* ``B_n``: ``alpha_1 = e_1`` (short), ``alpha_i = e_i - e_{i-1}``;
* ``C_n``: ``alpha_1 = 2 e_1`` (long), ``alpha_i = e_i - e_{i-1}``;
* ``D_{n+1}``: nodes ``0..n`` with ``alpha_0 = e_1 + e_0`` and
  ``alpha_i = e_i - e_{i-1}``; the label stores ``n``, not ``n + 1``;
* ``E_6, E_7, E_8``, ``F_4``: Bourbaki numbering;
* ``G_2``: ``alpha_1`` short, ``alpha_2`` long.

The inner product is the symmetrized Cartan form scaled so that long roots
have squared length 2.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np

from . import linalg
from .errors import ConstructionError, DomainError

Coeffs = Tuple[int, ...]

FAMILIES = "ABCDEFG"

_E_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


@dataclass(frozen=True, order=True)
class SystemLabel:
    """Family letter plus rank parameter.

    For family ``D`` the parameter is ``n`` and the system is ``D_{n+1}``;
    use :meth:`parse` (``"D7"``) or :meth:`d` to avoid the off-by-one.
    """

    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in FAMILIES:
            raise ConstructionError(f"unknown family {f!r}")
        if not isinstance(n, int) or isinstance(n, bool):
            raise ConstructionError(f"rank must be an integer, got {n!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[f]
        if not ok:
            rule = {
                "A": "A needs rank >= 1",
                "B": "B needs rank >= 2",
                "C": "C needs rank >= 2",
                "D": "D_{n+1} needs n >= 3 (i.e. D4 or larger)",
                "E": "E needs rank 6, 7 or 8",
                "F": "F needs rank 4",
                "G": "G needs rank 2",
            }[f]
            raise ConstructionError(f"invalid rank {n} for family {f}: {rule}")

    @classmethod
    def d(cls, true_rank: int) -> "SystemLabel":
        """Label of ``D_{true_rank}``."""
        return cls("D", true_rank - 1)

    @classmethod
    def parse(cls, text: str) -> "SystemLabel":
        """Parse a conventional name such as ``"E8"``, ``"B_5"`` or ``"D7"``.

        The number is always the true rank, so ``"D7"`` is ``SystemLabel("D", 6)``.
        """
        mt = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if not mt:
            raise ConstructionError(f"cannot parse system label {text!r}")
        fam, num = mt.group(1).upper(), int(mt.group(2))
        if fam == "D":
            if num < 4:
                raise ConstructionError(f"invalid rank {num} for family D: need D4 or larger")
            return cls.d(num)
        return cls(fam, num)

    @property
    def true_rank(self) -> int:
        return self.rank + 1 if self.family == "D" else self.rank

    @property
    def name(self) -> str:
        return f"{self.family}{self.true_rank}"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Root:
    """A root given by its coefficients over the simple roots."""

    coeffs: Coeffs
    long: bool = field(default=True, compare=False)

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs), self.long)

    def __str__(self) -> str:
        return "(" + " ".join(str(c) for c in self.coeffs) + ")"


def _diagram(label: SystemLabel) -> tuple[list[Fraction], list[tuple[int, int]]]:
    """Squared lengths of the simple roots and the edges of the diagram (0-based)."""
    f, n = label.family, label.rank
    two, one = Fraction(2), Fraction(1)
    if f == "A":
        return [two] * n, [(i, i + 1) for i in range(n - 1)]
    if f == "B":
        return [one] + [two] * (n - 1), [(i, i + 1) for i in range(n - 1)]
    if f == "C":
        return [two] + [one] * (n - 1), [(i, i + 1) for i in range(n - 1)]
    if f == "D":
        # index i is node alpha_i, i = 0..n
        return [two] * (n + 1), [(0, 2)] + [(i, i + 1) for i in range(1, n)]
    if f == "E":
        return [two] * n, [(a - 1, b - 1) for a, b in _E_EDGES if max(a, b) <= n]
    if f == "F":
        return [two, two, one, one], [(0, 1), (1, 2), (2, 3)]
    if f == "G":
        return [Fraction(2, 3), two], [(0, 1)]
    raise ConstructionError(f"unknown family {f!r}")


def _classical_h(label: SystemLabel) -> int:
    f, n = label.family, label.rank
    return {"A": n + 1, "B": 2 * n, "C": 2 * n, "D": 2 * n, "F": 12, "G": 6}.get(
        f, {6: 12, 7: 18, 8: 30}.get(n, 0)
    )


def classical_exponents(label: SystemLabel) -> list[int]:
    """Exponents as listed in the standard tables (used as an independent check)."""
    f, n = label.family, label.rank
    if f == "A":
        return list(range(1, n + 1))
    if f in "BC":
        return list(range(1, 2 * n, 2))
    if f == "D":
        return sorted(list(range(1, 2 * n, 2)) + [n])
    if f == "E":
        return {
            6: [1, 4, 5, 7, 8, 11],
            7: [1, 5, 7, 9, 11, 13, 17],
            8: [1, 7, 11, 13, 17, 19, 23, 29],
        }[n]
    if f == "F":
        return [1, 5, 7, 11]
    return [1, 5]


@dataclass(frozen=True, eq=False)
class RootSystem:
    label: SystemLabel
    cartan: Tuple[Tuple[int, ...], ...]
    sym_form: Tuple[Tuple[Fraction, ...], ...]
    simple_roots: Tuple[Root, ...]
    positive_roots: Tuple[Root, ...]
    coxeter_h: int
    exponents: Tuple[int, ...]
    _index: Dict[Coeffs, int] = field(repr=False)
    _heights: Tuple[int, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def name(self) -> str:
        return self.label.name

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    @property
    def long_length(self) -> Fraction:
        return _length_classes(self)[0]

    @property
    def short_length(self) -> Fraction:
        """Squared length of the short roots (equal to the long one if simply laced)."""
        return _length_classes(self)[1]

    # -- membership -------------------------------------------------------

    def lookup(self, coeffs: Iterable[int]) -> Root | None:
        """The root with these coefficients, or None."""
        c = tuple(int(x) for x in coeffs)
        if len(c) != self.rank:
            return None
        i = self._index.get(c)
        if i is not None:
            return self.positive_roots[i]
        i = self._index.get(tuple(-x for x in c))
        if i is not None:
            return -self.positive_roots[i]
        return None

    def is_root(self, coeffs: Iterable[int]) -> bool:
        return self.lookup(coeffs) is not None

    def root(self, coeffs: Iterable[int]) -> Root:
        r = self.lookup(coeffs)
        if r is None:
            raise DomainError(f"{tuple(coeffs)} is not a root of {self.name}")
        return r

    def index(self, root: Root | Coeffs) -> int:
        """Position of a positive root in :attr:`positive_roots`."""
        c = root.coeffs if isinstance(root, Root) else tuple(root)
        try:
            return self._index[c]
        except KeyError:
            raise DomainError(f"{c} is not a positive root of {self.name}") from None

    def all_roots(self) -> list[Root]:
        """Positive roots followed by their negatives, in the same order."""
        return list(self.positive_roots) + [-r for r in self.positive_roots]

    # -- arithmetic -------------------------------------------------------

    def _check(self, *roots: Root) -> None:
        for r in roots:
            if self.lookup(r.coeffs) is None:
                raise DomainError(f"{r.coeffs} is not a root of {self.name}")

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        """Inner product of two vectors given in simple-root coordinates."""
        scale, f = _int_form(self)
        total = 0
        for i, xi in enumerate(x):
            if xi:
                row = f[i]
                total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
        return Fraction(total, scale) if isinstance(total, int) else total / scale

    def height(self, beta: Root) -> int:
        self._check(beta)
        return beta.height

    def cartan_pairing(self, beta: Root, gamma: Root) -> int:
        """``<beta, gamma^vee> = 2 (beta, gamma) / (gamma, gamma)``."""
        self._check(beta, gamma)
        val = 2 * self.inner(beta.coeffs, gamma.coeffs) / self.inner(gamma.coeffs, gamma.coeffs)
        if val.denominator != 1:
            raise DomainError(f"non-integral pairing {val}")
        return int(val)

    def pi(self, k: int) -> int:
        """Number of positive roots of height ``k``."""
        if k < 1:
            return 0
        return sum(1 for h in self._heights if h == k)

    def roots_of_height(self, k: int) -> list[Root]:
        return [r for r, h in zip(self.positive_roots, self._heights) if h == k]

    def height_distribution(self) -> list[int]:
        """``[pi(1), pi(2), ..., pi(h - 1)]``."""
        counts = Counter(self._heights)
        return [counts[k] for k in range(1, self.coxeter_h)]

    @property
    def pos_array(self) -> np.ndarray:
        return _pos_array(self)

    def scaled_gram(self, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[int, np.ndarray]:
        """``(s, M)`` with ``M[i, j] = s * (a_i, b_j)`` in integers."""
        scale, f = _int_form(self)
        fa = np.asarray(a, dtype=np.int64).reshape(len(a), self.rank) @ np.array(f, dtype=np.int64)
        return scale, fa @ np.asarray(b, dtype=np.int64).reshape(len(b), self.rank).T

    def cartan_block(self, roots: Sequence[Root]) -> np.ndarray:
        """Integer matrix ``C[i, j] = <roots[j], roots[i]^vee>``."""
        rows = [r.coeffs for r in roots]
        _, g = self.scaled_gram(rows, rows)
        diag = np.diag(g)
        twice = 2 * g.T
        if (twice % diag[:, None]).any():
            raise DomainError("non-integral Cartan pairing")
        return twice // diag[:, None]

    def norm2(self, root: Root) -> Fraction:
        """Squared length, read off the length class."""
        long_len, short_len = _length_classes(self)
        return long_len if root.long else short_len

    # -- epsilon view -----------------------------------------------------

    def eps_basis(self) -> dict[int, dict[int, int]]:
        """Simple roots in epsilon coordinates, keyed by coefficient position."""
        f, n = self.label.family, self.label.rank
        if f == "A":
            return {i: {i + 2: 1, i + 1: -1} for i in range(n)}
        if f in "BC":
            first = {1: 1} if f == "B" else {1: 2}
            return {0: first, **{i: {i + 1: 1, i: -1} for i in range(1, n)}}
        if f == "D":
            return {0: {1: 1, 0: 1}, **{i: {i: 1, i - 1: -1} for i in range(1, n + 1)}}
        raise DomainError(f"no epsilon realization is provided for family {f}")

    def to_eps(self, root: Root | Sequence[int]) -> dict[int, int]:
        """Epsilon coordinates ``{index: coefficient}`` with zero entries dropped."""
        coeffs = root.coeffs if isinstance(root, Root) else root
        out: Counter = Counter()
        for pos, vec in self.eps_basis().items():
            for j, v in vec.items():
                out[j] += coeffs[pos] * v
        return {j: v for j, v in sorted(out.items()) if v}

    def from_eps(self, vec: Mapping[int, int]) -> Root:
        """The root whose epsilon coordinates are ``vec`` (e.g. ``{2: 1, 5: 1}``)."""
        basis = self.eps_basis()
        idx = sorted({j for v in basis.values() for j in v} | set(vec))
        cols = [[basis[p].get(j, 0) for p in range(self.rank)] for j in idx]
        aug = [row + [vec.get(j, 0)] for row, j in zip(cols, idx)]
        red, piv = linalg.row_echelon(aug)
        if self.rank in piv:
            raise DomainError(f"{dict(vec)} is outside the root lattice span")
        sol = [Fraction(0)] * self.rank
        for row, p in zip(red, piv):
            sol[p] = row[self.rank]
        if any(x.denominator != 1 for x in sol):
            raise DomainError(f"{dict(vec)} is not in the root lattice")
        return self.root(int(x) for x in sol)

    def to_json(self) -> dict:
        return {
            "label": self.name,
            "family": self.label.family,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [list(r.coeffs) for r in self.positive_roots],
            "coxeter_number": self.coxeter_h,
            "exponents": list(self.exponents),
        }


@lru_cache(maxsize=None)
def _int_form(rs: RootSystem) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """The form scaled to integers: ``(scale, scale * sym_form)``."""
    scale = 1
    for row in rs.sym_form:
        for x in row:
            scale = scale * x.denominator // gcd(scale, x.denominator)
    return scale, tuple(tuple(int(x * scale) for x in row) for row in rs.sym_form)


@lru_cache(maxsize=None)
def _length_classes(rs: RootSystem) -> tuple[Fraction, Fraction]:
    lengths = [rs.sym_form[i][i] for i in range(rs.rank)]
    return max(lengths), min(lengths)


@lru_cache(maxsize=None)
def _pos_array(rs: RootSystem) -> np.ndarray:
    arr = np.array([r.coeffs for r in rs.positive_roots], dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _generate_positive(cartan: Sequence[Sequence[int]]) -> list[Coeffs]:
    """Positive roots by height-increasing closure using root strings.

    For a positive root ``beta`` and simple root ``alpha_i`` let ``p`` be the
    length of the downward ``alpha_i``-string through ``beta`` (known from
    lower heights).  Then ``beta + alpha_i`` is a root exactly when
    ``p - <beta, alpha_i^vee> > 0``.
    """
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    layer = list(simple)
    out = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(r):
                p = 0
                lower = list(beta)
                while True:
                    lower[i] -= 1
                    if tuple(lower) in found:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * cartan[i][j] for j in range(r))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= found
        found |= nxt
        layer = sorted(nxt)
        out.extend(layer)
    return out


@lru_cache(maxsize=None)
def build(label: SystemLabel) -> RootSystem:
    """Construct the root system of the given type."""
    if not isinstance(label, SystemLabel):
        raise ConstructionError(f"expected a SystemLabel, got {label!r}")
    lengths, edges = _diagram(label)
    r = len(lengths)
    form = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        form[i][i] = lengths[i]
    for i, j in edges:
        form[i][j] = form[j][i] = -max(lengths[i], lengths[j]) / 2
    cartan = tuple(
        tuple(int(2 * form[j][i] / form[i][i]) for j in range(r)) for i in range(r)
    )

    coeffs = sorted(_generate_positive(cartan), key=lambda c: (sum(c), c))
    long_len = max(lengths)

    denom = 3 if label.family == "G" else 2
    iform = np.array([[int(x * denom) for x in row] for row in form], dtype=np.int64)
    arr = np.array(coeffs, dtype=np.int64)
    sq = np.einsum("ij,jk,ik->i", arr, iform, arr)
    positive = tuple(Root(c, Fraction(int(v), denom) == long_len) for c, v in zip(coeffs, sq))
    heights = tuple(sum(c) for c in coeffs)
    h = max(heights) + 1
    counts = Counter(heights)
    exponents = []
    for k in range(1, h):
        exponents.extend([k] * (counts[k] - counts[k + 1]))

    return RootSystem(
        label=label,
        cartan=cartan,
        sym_form=tuple(tuple(row) for row in form),
        simple_roots=tuple(sorted(positive[:r], key=lambda x: x.coeffs.index(1))),
        positive_roots=positive,
        coxeter_h=h,
        exponents=tuple(exponents),
        _index={c: i for i, c in enumerate(coeffs)},
        _heights=heights,
    )


def build_named(name: str) -> RootSystem:
    return build(SystemLabel.parse(name))


def height(rs: RootSystem, beta: Root) -> int:
    return rs.height(beta)


def cartan_pairing(rs: RootSystem, beta: Root, gamma: Root) -> int:
    return rs.cartan_pairing(beta, gamma)


def pi(rs: RootSystem, k: int) -> int:
    return rs.pi(k)


def dual_partition(parts: Iterable[int], k: int) -> int:
    """k-th part of the conjugate partition: how many parts are >= k."""
    return sum(1 for p in parts if p >= k)

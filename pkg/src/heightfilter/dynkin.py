"""Normalized Dynkin types and recognition of connected Cartan graphs."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, NamedTuple, Sequence

from .errors import InvariantError


class ComponentLabel(NamedTuple):
    family: str
    rank: int
    short: bool = False
    dagger: bool = False

    def render(self) -> str:
        return f"{self.family}{self.rank}" + ("(s)" if self.short else "") + ("†" if self.dagger else "")

    def plain(self) -> "ComponentLabel":
        return self._replace(dagger=False)


def _sort_key(c: ComponentLabel):
    return (-c.rank, c.family, c.dagger, c.short)


def normalize(
    family: str, rank: int, short: bool = False, dagger: bool = False
) -> list[ComponentLabel]:
    """Rewrite a possibly degenerate label into canonical components.

    ``D1`` vanishes, ``D2`` becomes two ``A1`` (the dagger, if any, goes on
    one of them), ``D3`` becomes ``A3``, ``B1``/``C1`` become ``A1`` with the
    given length flag, ``C2`` becomes ``B2``.
    """
    if rank <= 0:
        return []
    if family == "D":
        if rank == 1:
            return []
        if rank == 2:
            return [ComponentLabel("A", 1, short, False), ComponentLabel("A", 1, short, dagger)]
        if rank == 3:
            return [ComponentLabel("A", 3, short, dagger)]
        return [ComponentLabel("D", rank, short, dagger)]
    if family in "BC":
        if rank == 1:
            return [ComponentLabel("A", 1, short, dagger)]
        if rank == 2:
            return [ComponentLabel("B", 2, False, dagger)]
        return [ComponentLabel(family, rank, False, dagger)]
    return [ComponentLabel(family, rank, short, dagger)]


@dataclass(frozen=True)
class DynkinType:
    components: tuple[ComponentLabel, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(self.components, key=_sort_key)))
        if sum(c.dagger for c in self.components) > 1:
            raise InvariantError("more than one daggered component")

    @classmethod
    def of(cls, *parts: Iterable[ComponentLabel] | ComponentLabel) -> "DynkinType":
        comps: list[ComponentLabel] = []
        for p in parts:
            if isinstance(p, ComponentLabel):
                comps.append(p)
            else:
                comps.extend(p)
        return cls(tuple(comps))

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        """Inverse of :meth:`render`, e.g. ``"A3 + 2A1 + A1†"``."""
        import re

        text = text.strip()
        if text in ("", "empty", "∅"):
            return cls(())
        comps = []
        for tok in text.split("+"):
            mt = re.fullmatch(r"\s*(\d*)([A-G])(\d+)(\(s\))?(†)?\s*", tok)
            if not mt:
                raise ValueError(f"cannot parse component {tok!r}")
            mult = int(mt.group(1) or 1)
            for _ in range(mult):
                comps.extend(
                    normalize(mt.group(2), int(mt.group(3)), bool(mt.group(4)), bool(mt.group(5)))
                )
        return cls(tuple(comps))

    @property
    def dagger(self) -> ComponentLabel | None:
        return next((c for c in self.components if c.dagger), None)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    def positive_root_count(self) -> int:
        return sum(positive_root_count(c.family, c.rank) for c in self.components)

    def counter(self) -> Counter:
        return Counter(self.components)

    def render(self) -> str:
        if not self.components:
            return "empty"
        out = []
        for comp, grp in groupby(self.components):
            k = len(list(grp))
            out.append((str(k) if k > 1 else "") + comp.render())
        return " + ".join(out)

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> list[dict]:
        return [c._asdict() for c in self.components]


def positive_root_count(family: str, rank: int) -> int:
    n = rank
    if family == "A":
        return n * (n + 1) // 2
    if family in "BC":
        return n * n
    if family == "D":
        return n * (n - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[(family, n)]


def identify(
    cartan: Sequence[Sequence[int]], lengths: Sequence, short_in_ambient: Sequence[bool]
) -> tuple[str, int, bool]:
    """Family, rank and short flag of a connected Cartan matrix.

    ``cartan[i][j] = <g_j, g_i^vee>``; ``lengths`` are squared lengths of the
    nodes.  Raises :class:`InvariantError` for anything that is not a finite
    type.
    """
    n = len(cartan)
    short = all(short_in_ambient)
    if n == 1:
        return "A", 1, short
    adj = {i: [j for j in range(n) if j != i and cartan[i][j] != 0] for i in range(n)}
    bonds = {}
    for i in range(n):
        for j in adj[i]:
            if i < j:
                bonds[(i, j)] = cartan[i][j] * cartan[j][i]
    if len(bonds) != n - 1:
        raise InvariantError(f"component graph is not a tree: {bonds}")
    if any(b not in (1, 2, 3) for b in bonds.values()):
        raise InvariantError(f"invalid bond multiplicities {bonds}")
    degs = [len(adj[i]) for i in range(n)]
    multi = [e for e, b in bonds.items() if b > 1]

    if multi:
        if len(multi) > 1 or max(degs) > 2:
            raise InvariantError("not a finite type: branched or several multiple bonds")
        (i, j), b = multi[0], bonds[multi[0]]
        if b == 3:
            if n != 2:
                raise InvariantError("triple bond outside G2")
            return "G", 2, False
        if n == 2:
            return "B", 2, False
        longest = max(lengths)
        n_long = sum(1 for x in lengths if x == longest)
        ends = [k for k in range(n) if degs[k] == 1]
        if n == 4 and i not in ends and j not in ends:
            return "F", 4, False
        if n_long == n - 1:
            return "B", n, False
        if n_long == 1:
            return "C", n, False
        raise InvariantError("double bond in an unexpected position")

    if max(degs) <= 2:
        return "A", n, short
    branch = [k for k in range(n) if degs[k] == 3]
    if len(branch) != 1 or max(degs) > 3:
        raise InvariantError("simply laced graph with bad branching")
    c = branch[0]
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return "D", n, short
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return "E", n, short
    raise InvariantError(f"simply laced tree with arms {arms} is not of finite type")


def render_x0(t: DynkinType) -> str:
    """X0 rendering: the empty diagram prints as ``∅``."""
    return t.render() if t.components else "∅"

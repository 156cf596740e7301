"""Disk model: m-diagonals of a polygon, (m+2)-angulations, twists and flips.

The polygon has S sides with S = 2 (mod m); vertices are labeled 1..S
clockwise.  An m-diagonal cuts it into two pieces whose side counts are
both = 2 (mod m), so a maximal noncrossing set of them (an angulation)
dissects the polygon into (m+2)-gons.  The twist moves a diagonal to the
clockwise-next chord splitting the merged (2m+2)-gon around it; a flip
replaces a diagonal by its twist.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .faces import Face, quiver_from_faces, split_regions
from .quiver import ColoredQuiver

DEFAULT_GUARD = 12


class GuardExceeded(RuntimeError):
    """The enumeration guard refused a configuration as too large."""


class InvalidAngulation(ValueError):
    """A diagonal or arc set violates the angulation invariants."""


class NotInAngulation(ValueError):
    """The diagonal to twist or flip is not part of the angulation."""


@dataclass(frozen=True, order=True)
class Diagonal:
    """A chord of the polygon, stored with a < b."""

    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("a diagonal needs two distinct endpoints")
        if self.a > self.b:
            a, b = self.a, self.b
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)

    def __repr__(self):
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class Edge:
    """A boundary edge of the polygon, from v to v+1 (mod S)."""

    u: int
    v: int


def crosses(d: Diagonal, e: Diagonal) -> bool:
    """True iff the chords interleave strictly; shared endpoints do not cross."""
    return (d.a < e.a < d.b < e.b) or (e.a < d.a < e.b < d.b)


@dataclass(frozen=True)
class DiskConfig:
    """Polygon size data: color bound m and side count S = 2 (mod m)."""

    m: int
    sides: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.sides < self.m + 2:
            raise ValueError(f"need at least {self.m + 2} sides")
        if (self.sides - 2) % self.m:
            raise ValueError(f"sides must be 2 mod {self.m}")

    @property
    def rank(self) -> int:
        """Number of diagonals in every angulation."""
        return (self.sides - 2) // self.m - 1

    def check_vertex(self, v):
        if not (1 <= v <= self.sides):
            raise IndexError(f"vertex {v} outside 1..{self.sides}")

    def is_m_diagonal(self, a: int, b: int) -> bool:
        """True iff the chord a-b cuts off two pieces of size 2 (mod m)."""
        self.check_vertex(a)
        self.check_vertex(b)
        if a == b:
            return False
        lo, hi = min(a, b), max(a, b)
        diff = hi - lo
        return diff % self.m == 1 % self.m and self.m + 1 <= diff <= self.sides - self.m - 1

    def diagonal(self, a: int, b: int) -> Diagonal:
        if not self.is_m_diagonal(a, b):
            raise InvalidAngulation(f"({a},{b}) is not an m-diagonal here")
        return Diagonal(a, b)

    def all_diagonals(self) -> list[Diagonal]:
        return sorted(
            Diagonal(a, b)
            for a, b in itertools.combinations(range(1, self.sides + 1), 2)
            if self.is_m_diagonal(a, b)
        )

    def is_m_ear(self, d: Diagonal) -> bool:
        """True iff d cuts off a single (m+2)-gon."""
        diff = d.b - d.a
        return diff == self.m + 1 or diff == self.sides - self.m - 1


class DiskAngulation:
    """A maximal noncrossing set of m-diagonals, canonically sorted."""

    __slots__ = ("config", "diagonals", "__dict__")

    def __init__(self, config: DiskConfig, diagonals: Iterable[Diagonal]):
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "diagonals", tuple(sorted(set(diagonals))))

    def __setattr__(self, *_):
        raise AttributeError("DiskAngulation is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, DiskAngulation)
            and self.config == other.config
            and self.diagonals == other.diagonals
        )

    def __hash__(self):
        return hash((self.config, self.diagonals))

    def __repr__(self):
        return "".join(map(repr, self.diagonals)) or "(empty)"

    def violations(self) -> list[str]:
        out = []
        for d in self.diagonals:
            if not self.config.is_m_diagonal(d.a, d.b):
                out.append(f"{d} is not an m-diagonal")
        for d, e in itertools.combinations(self.diagonals, 2):
            if crosses(d, e):
                out.append(f"{d} crosses {e}")
        if len(self.diagonals) != self.config.rank:
            out.append(
                f"{len(self.diagonals)} diagonals, expected {self.config.rank}"
            )
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def _require_valid(self):
        problems = self.violations()
        if problems:
            raise InvalidAngulation("; ".join(problems))

    @cached_property
    def _faces(self) -> tuple[Face, ...]:
        self._require_valid()
        S = self.config.sides
        cycle = list(range(1, S + 1))
        chords = [frozenset((d.a, d.b)) for d in self.diagonals]
        out = []
        for region in split_regions(cycle, chords):
            sides = []
            for u, v in zip(region, region[1:] + region[:1]):
                if v == u % S + 1:
                    sides.append(Edge(u, v))
                else:
                    sides.append(Diagonal(u, v))
            out.append(Face(tuple(region), tuple(sides)))
        return tuple(out)

    def faces(self) -> list[Face]:
        """The r+1 cells, each an (m+2)-gon with sides in clockwise order."""
        return list(self._faces)

    def merged_region(self, d: Diagonal) -> tuple[int, ...]:
        """Vertex cycle of the (2m+2)-gon around d, clockwise."""
        if d not in self.diagonals:
            raise NotInAngulation(f"{d} not in angulation")
        adjacent = [f for f in self._faces if d in f.sides]
        assert len(adjacent) == 2, "a diagonal borders exactly two faces"
        verts = sorted(set(adjacent[0].vertices) | set(adjacent[1].vertices))
        return tuple(verts)

    def twist(self, d: Diagonal) -> Diagonal:
        """Clockwise-next chord splitting the merged region around d."""
        return region_twist(self.merged_region(d), d, self.config.m)

    def flip(self, d: Diagonal) -> "DiskAngulation":
        """Replace d by its twist."""
        new = self.twist(d)
        return DiskAngulation(
            self.config, [e for e in self.diagonals if e != d] + [new]
        )

    def quiver_of(self, order: Sequence[Diagonal] | None = None) -> ColoredQuiver:
        """Colored quiver with one vertex per diagonal (canonical order)."""
        return quiver_from_faces(
            self.config.m, order or self.diagonals, self._faces
        )

    def to_json_dict(self) -> dict:
        return {
            "type": "disk",
            "m": self.config.m,
            "sides": self.config.sides,
            "diagonals": [[d.a, d.b] for d in self.diagonals],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DiskAngulation":
        cfg = DiskConfig(data["m"], data["sides"])
        return cls(cfg, [Diagonal(a, b) for a, b in data["diagonals"]])


def region_twist(region: Sequence[int], d: Diagonal, m: int) -> Diagonal:
    """Twist of a chord inside a fixed (2m+2)-gon region cycle."""
    L = len(region)
    x = region.index(d.a)
    y = region.index(d.b)
    if (y - x) % L not in (m + 1, L - (m + 1)):
        raise InvalidAngulation(f"{d} does not split the region {region}")
    return Diagonal(region[(x + 1) % L], region[(y + 1) % L])


def initial_fan(cfg: DiskConfig) -> DiskAngulation:
    """The angulation whose diagonals all meet vertex 1."""
    return DiskAngulation(
        cfg, [Diagonal(1, k * cfg.m + 2) for k in range(1, cfg.rank + 1)]
    )


def completions(
    cfg: DiskConfig, partial: Iterable[Diagonal], removed: Diagonal
) -> list[Diagonal]:
    """The m+1 diagonals completing an almost-complete angulation.

    ``partial`` holds the remaining r-1 diagonals.  The list walks the
    clockwise cycle starting from the removed diagonal's successor and ends
    with the removed diagonal itself.
    """
    partial = tuple(sorted(set(partial)))
    if len(partial) != cfg.rank - 1 or cfg.rank < 1:
        raise InvalidAngulation("input is not an almost-complete angulation")
    for d in partial:
        if not cfg.is_m_diagonal(d.a, d.b):
            raise InvalidAngulation(f"{d} is not an m-diagonal")
        if crosses(d, removed):
            raise InvalidAngulation(f"{removed} crosses {d}")
    for d, e in itertools.combinations(partial, 2):
        if crosses(d, e):
            raise InvalidAngulation(f"{d} crosses {e}")
    if removed in partial:
        raise InvalidAngulation(f"{removed} is still present")
    cycle = list(range(1, cfg.sides + 1))
    chords = [frozenset((d.a, d.b)) for d in partial]
    big = [r for r in split_regions(cycle, chords) if len(r) == 2 * cfg.m + 2]
    assert len(big) == 1, "an almost-complete angulation has one open region"
    region = tuple(big[0])
    out = []
    cur = removed
    for _ in range(cfg.m + 1):
        cur = region_twist(region, cur, cfg.m)
        out.append(cur)
    assert out[-1] == removed
    return out


def complete(cfg: DiskConfig, partial: Iterable[Diagonal]) -> DiskAngulation:
    """Greedy completion of a noncrossing set to a full angulation.

    Candidates are scanned in (a, b) order; the first compatible one is
    appended until the rank is reached, so the result is deterministic.
    """
    chosen = sorted(set(partial))
    for d in chosen:
        if not cfg.is_m_diagonal(d.a, d.b):
            raise InvalidAngulation(f"{d} is not an m-diagonal")
    for d, e in itertools.combinations(chosen, 2):
        if crosses(d, e):
            raise InvalidAngulation(f"{d} crosses {e}")
    for cand in cfg.all_diagonals():
        if len(chosen) == cfg.rank:
            break
        if cand not in chosen and all(not crosses(cand, d) for d in chosen):
            chosen.append(cand)
    return DiskAngulation(cfg, chosen)


@dataclass(frozen=True)
class DiskCut:
    """Result of cutting the polygon along a diagonal.

    ``map1``/``map2`` send piece-local labels 1..S_i to global labels;
    transported diagonals keep their crossing relations.
    """

    config: DiskConfig
    chord: Diagonal
    piece1: DiskConfig
    piece2: DiskConfig
    map1: tuple[int, ...]
    map2: tuple[int, ...]

    def transport(self, e: Diagonal) -> tuple[int, Diagonal]:
        """Piece number (1 or 2) and local coordinates of a diagonal."""
        if e == self.chord:
            raise ValueError("the cut chord itself does not transport")
        if crosses(e, self.chord):
            raise ValueError(f"{e} crosses the cut chord")
        a, b = self.chord.a, self.chord.b
        if a <= e.a and e.b <= b:
            return 1, Diagonal(e.a - a + 1, e.b - a + 1)
        inv2 = {g: i + 1 for i, g in enumerate(self.map2)}
        return 2, Diagonal(inv2[e.a], inv2[e.b])

    def pull_back(self, piece: int, e: Diagonal) -> Diagonal:
        mapping = self.map1 if piece == 1 else self.map2
        return Diagonal(mapping[e.a - 1], mapping[e.b - 1])


def cut_along(cfg: DiskConfig, d: Diagonal) -> DiskCut:
    """Split the polygon at d into two smaller disk configurations."""
    if not cfg.is_m_diagonal(d.a, d.b):
        raise InvalidAngulation(f"{d} is not an m-diagonal")
    s1 = d.b - d.a + 1
    s2 = cfg.sides - (d.b - d.a) + 1
    map1 = tuple(range(d.a, d.b + 1))
    map2 = tuple(
        (v - 1) % cfg.sides + 1 for v in range(d.b, d.b + s2)
    )
    return DiskCut(
        cfg, d, DiskConfig(cfg.m, s1), DiskConfig(cfg.m, s2), map1, map2
    )


def _check_guard(cfg: DiskConfig, guard: int):
    if cfg.rank > guard:
        raise GuardExceeded(
            f"rank {cfg.rank} exceeds the enumeration guard {guard}"
        )


def enumerate_angulations(
    cfg: DiskConfig, guard: int = DEFAULT_GUARD, collect: bool = False
):
    """Count (and optionally list) all angulations by backtracking.

    Entirely independent of the flip machinery: extends noncrossing sets
    over the canonically ordered diagonal list.
    """
    _check_guard(cfg, guard)
    diagonals = cfg.all_diagonals()
    rank = cfg.rank
    found: list[DiskAngulation] = []
    count = 0

    def backtrack(start, chosen):
        nonlocal count
        if len(chosen) == rank:
            count += 1
            if collect:
                found.append(DiskAngulation(cfg, chosen))
            return
        # not enough candidates left to finish
        if len(chosen) + (len(diagonals) - start) < rank:
            return
        for idx in range(start, len(diagonals)):
            d = diagonals[idx]
            if all(not crosses(d, e) for e in chosen):
                chosen.append(d)
                backtrack(idx + 1, chosen)
                chosen.pop()

    backtrack(0, [])
    return (count, found) if collect else (count, None)


def maximal_set_sizes(cfg: DiskConfig, guard: int = DEFAULT_GUARD) -> dict[int, int]:
    """Histogram {size: count} over all maximal noncrossing diagonal sets.

    A set is maximal when no m-diagonal whatsoever is compatible with it;
    on the disk every maximal set has exactly ``rank`` elements, which the
    verification suite asserts against this histogram.
    """
    _check_guard(cfg, guard)
    diagonals = cfg.all_diagonals()
    sizes: dict[int, int] = {}

    def backtrack(start, chosen):
        extendable = False
        for idx, d in enumerate(diagonals):
            if d not in chosen and all(not crosses(d, e) for e in chosen):
                extendable = True
                if idx >= start:
                    chosen.append(d)
                    backtrack(idx + 1, chosen)
                    chosen.pop()
        # a maximal set is reached exactly once, along its sorted chain
        if not extendable:
            sizes[len(chosen)] = sizes.get(len(chosen), 0) + 1

    backtrack(0, [])
    return sizes


@dataclass(frozen=True)
class FlipGraph:
    """Flip graph on all angulations of one configuration."""

    nodes: tuple[DiskAngulation, ...]
    edges: frozenset[frozenset[int]]

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adj = {i: set() for i in range(len(self.nodes))}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)

    def to_dot(self) -> str:
        lines = ["graph flips {"]
        for i, node in enumerate(self.nodes):
            lines.append(f'  {i} [label="{node!r}"];')
        for e in sorted(tuple(sorted(e)) for e in self.edges):
            lines.append(f"  {e[0]} -- {e[1]};")
        lines.append("}")
        return "\n".join(lines)


def flip_graph(cfg: DiskConfig, guard: int = DEFAULT_GUARD) -> FlipGraph:
    """BFS over flips starting from the initial fan."""
    _check_guard(cfg, guard)
    start = initial_fan(cfg)
    index = {start: 0}
    order = [start]
    edges = set()
    queue = [start]
    while queue:
        node = queue.pop()
        for d in node.diagonals:
            other = node.flip(d)
            if other not in index:
                index[other] = len(order)
                order.append(other)
                queue.append(other)
            if index[other] != index[node]:
                edges.add(frozenset((index[node], index[other])))
    return FlipGraph(tuple(order), frozenset(edges))

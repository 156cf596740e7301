"""Face machinery shared by the disk and annulus models.

A face is an (m+2)-gon cell of an angulation, stored as its boundary sides
in clockwise cyclic order (clockwise meaning the direction of increasing
vertex labels).  Arrow colors of the associated quiver are read off faces
here, so both geometric models use one orientation convention.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .quiver import ColoredQuiver


@dataclass(frozen=True)
class Face:
    """One cell: ``sides[i]`` joins ``vertices[i]`` to ``vertices[i+1]``."""

    vertices: tuple
    sides: tuple

    def __len__(self):
        return len(self.sides)


def split_regions(cycle: Sequence[Hashable], chords: Iterable[frozenset]) -> list[list]:
    """Vertex cycles of the regions a chord set cuts a polygon into.

    ``cycle`` lists the polygon's vertices in clockwise order; every chord is
    a frozenset pair of cycle members.  Chords must be pairwise noncrossing.
    """
    chords = list(chords)
    if not chords:
        return [list(cycle)]
    a, b = sorted(chords[0], key=list(cycle).index)
    ia, ib = cycle.index(a), cycle.index(b)
    side1 = list(cycle[ia : ib + 1])
    side2 = list(cycle[ib:]) + list(cycle[: ia + 1])
    set1 = set(side1)
    in1, in2 = [], []
    for ch in chords[1:]:
        u, v = tuple(ch)
        if u in set1 and v in set1:
            in1.append(ch)
        else:
            in2.append(ch)
    return split_regions(side1, in1) + split_regions(side2, in2)


def quiver_from_faces(m: int, arc_order: Sequence, faces: Iterable[Face]) -> ColoredQuiver:
    """Colored quiver of an angulation read from its face list.

    Vertices are the arcs in ``arc_order``.  For arcs d, e on one face the
    arrow d -> e gets the color counting the face's sides strictly between
    d and e clockwise from d; under this orientation flips of angulations
    commute with colored quiver mutation.
    """
    index = {arc: i for i, arc in enumerate(arc_order)}
    arrows = Counter()
    for face in faces:
        spots = [
            (pos, index[side])
            for pos, side in enumerate(face.sides)
            if side in index
        ]
        size = len(face.sides)
        for pi, vi in spots:
            for pj, vj in spots:
                if vi == vj:
                    continue
                arrows[(vi, vj, (pj - pi - 1) % size)] += 1
    return ColoredQuiver(m, len(arc_order), arrows)

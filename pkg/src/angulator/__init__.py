"""Colored quiver mutation and (m+2)-angulation models on disks and annuli."""

from .annulus import (
    AnnulusAngulation,
    AnnulusConfig,
    Bridge,
    InnerChord,
    OuterChord,
    UnsupportedFlip,
    initial_bridges,
)
from .disk import (
    Diagonal,
    DiskAngulation,
    DiskConfig,
    GuardExceeded,
    InvalidAngulation,
    completions,
    crosses,
    cut_along,
    enumerate_angulations,
    flip_graph,
    initial_fan,
)
from .faces import Face
from .quiver import ColoredQuiver, PlainQuiver, VertexRangeError, Violation

__all__ = [
    "AnnulusAngulation",
    "AnnulusConfig",
    "Bridge",
    "ColoredQuiver",
    "Diagonal",
    "DiskAngulation",
    "DiskConfig",
    "Face",
    "GuardExceeded",
    "InnerChord",
    "InvalidAngulation",
    "OuterChord",
    "PlainQuiver",
    "UnsupportedFlip",
    "VertexRangeError",
    "Violation",
    "completions",
    "crosses",
    "cut_along",
    "enumerate_angulations",
    "flip_graph",
    "initial_bridges",
    "initial_fan",
]

__version__ = "0.1.0"

"""Toroidal rectangles and the tilde differential.

:class:`Rect` and :func:`rectangles` follow the definitions literally and are
used for inspection and as a slow reference.  :func:`tilde_boundary` and
friends call the incremental kernels in :mod:`gridtheta.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .grid import GridDiagram, State

__all__ = [
    "Chain",
    "Rect",
    "rectangles",
    "is_empty",
    "marker_counts",
    "tilde_boundary",
    "tilde_boundary_k",
    "tilde_predecessors",
    "chain_boundary",
    "reference_boundary_k",
]

#: A mod-2 formal sum of states: set semantics, coefficients in F_2.
Chain = frozenset


@dataclass(frozen=True)
class Rect:
    """Rectangle on the torus between vertical circles and horizontal circles.

    It runs rightward from vertical circle ``col_start`` to ``col_end`` and
    upward from horizontal circle ``row_start`` to ``row_end`` (all 0-based,
    cyclic).  The source state sits at the lower-left and upper-right corners.
    """

    n: int
    col_start: int
    col_end: int
    row_start: int
    row_end: int

    @property
    def width(self) -> int:
        return (self.col_end - self.col_start) % self.n

    @property
    def height(self) -> int:
        return (self.row_end - self.row_start) % self.n

    @property
    def wraps_columns(self) -> bool:
        return self.col_end < self.col_start

    @property
    def wraps_rows(self) -> bool:
        return self.row_end < self.row_start

    def contains_point(self, col: int, row: int) -> bool:
        """Lattice point strictly inside."""
        dc = (col - self.col_start) % self.n
        dr = (row - self.row_start) % self.n
        return 0 < dc < self.width and 0 < dr < self.height

    def contains_cell(self, col: int, row: int) -> bool:
        """Unit square with lower-left lattice corner ``(col, row)`` inside."""
        dc = (col - self.col_start) % self.n
        dr = (row - self.row_start) % self.n
        return dc < self.width and dr < self.height


def rectangles(x: State, y: State) -> list[Rect]:
    """The two rectangles connecting ``x`` to ``y``, or ``[]``."""
    if len(x) != len(y):
        raise ValueError("states of different sizes")
    diff = [c for c in range(len(x)) if x[c] != y[c]]
    if len(diff) != 2:
        return []
    c1, c2 = diff
    if x[c1] != y[c2] or x[c2] != y[c1]:
        return []
    n = len(x)
    return [
        Rect(n, c1, c2, x[c1], x[c2]),
        Rect(n, c2, c1, x[c2], x[c1]),
    ]


def is_empty(r: Rect, x: State) -> bool:
    return not any(r.contains_point(c, x[c]) for c in range(len(x)))


def marker_counts(r: Rect, G: GridDiagram) -> tuple[int, int]:
    """Number of X and of O markings inside ``r``."""
    nx = sum(1 for c in range(G.n) if r.contains_cell(c, G.x0[c]))
    no = sum(1 for c in range(G.n) if r.contains_cell(c, G.o0[c]))
    return nx, no


def tilde_boundary(x: State, G: GridDiagram) -> Chain:
    """Empty rectangles containing no markings, counted mod 2."""
    return Chain(kernels.boundary(x, G.x0, G.o0))


def tilde_boundary_k(x: State, G: GridDiagram, k: int) -> Chain:
    """Empty rectangles with no O and exactly ``k`` X markings, mod 2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return tilde_boundary(x, G)
    if k >= G.n:
        return Chain()
    return Chain(kernels.boundary_k(x, G.x0, G.o0, k))


def tilde_predecessors(y: State, G: GridDiagram) -> Chain:
    """All ``x`` with ``y`` in ``tilde_boundary(x)`` (the co-differential)."""
    return Chain(kernels.coboundary(y, G.x0, G.o0))


def chain_boundary(chain: Iterable[State], G: GridDiagram, k: int = 0) -> Chain:
    """Apply ``tilde_boundary_k`` linearly to a chain, cancelling mod 2."""
    out: set[State] = set()
    for x in chain:
        out.symmetric_difference_update(tilde_boundary_k(x, G, k))
    return Chain(out)


def reference_boundary_k(x: State, G: GridDiagram, k: int = 0) -> Chain:
    """Slow differential straight from :func:`rectangles`; test reference only."""
    n = G.n
    out: set[State] = set()
    for a in range(n):
        for b in range(a + 1, n):
            buf = bytearray(x)
            buf[a], buf[b] = buf[b], buf[a]
            y = bytes(buf)
            count = 0
            for r in rectangles(x, y):
                if is_empty(r, x) and marker_counts(r, G) == (k, 0):
                    count += 1
            if count % 2:
                out.add(y)
    return Chain(out)

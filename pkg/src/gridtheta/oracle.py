"""Brute-force ground truth on small grids.

Everything here enumerates all ``n!`` states and does dense-ish GF(2)
elimination, independently of the layer growth in :mod:`gridtheta.nullity`.
Vectors over F_2 are Python ints used as bitsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .grid import GridDiagram, State

__all__ = [
    "OracleLimitError",
    "GradedBasis",
    "BRUTE_FORCE_LIMIT",
    "HOMOLOGY_LIMIT",
    "enumerate_states",
    "membership",
    "homology_dims",
    "rank_gf2",
]

BRUTE_FORCE_LIMIT = 10
HOMOLOGY_LIMIT = 6


class OracleLimitError(ValueError):
    pass


@dataclass(frozen=True)
class GradedBasis:
    grading: int
    states: tuple[State, ...]

    def index(self) -> dict[State, int]:
        return {s: i for i, s in enumerate(self.states)}

    def __len__(self) -> int:
        return len(self.states)


def _check(G: GridDiagram, limit: int) -> None:
    if G.n > limit:
        raise OracleLimitError(f"grid number {G.n} exceeds brute-force limit {limit}")


def enumerate_states(G: GridDiagram, m: int, limit: int = BRUTE_FORCE_LIMIT) -> GradedBasis:
    """All states of Maslov grading ``m``, lexicographically ordered."""
    _check(G, limit)
    return GradedBasis(m, tuple(kernels.states_in_grading(G.o0, m)))


class _Eliminator:
    """Incremental column reduction keyed by the leading bit."""

    def __init__(self) -> None:
        self.pivots: dict[int, int] = {}

    def reduce(self, v: int) -> int:
        pivots = self.pivots
        while v:
            p = v.bit_length() - 1
            w = pivots.get(p)
            if w is None:
                return v
            v ^= w
        return 0

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if v:
            self.pivots[v.bit_length() - 1] = v
            return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank_gf2(columns: Iterable[int]) -> int:
    e = _Eliminator()
    for v in columns:
        e.add(v)
    return e.rank


def _differential(G: GridDiagram, x: State, filtered: bool) -> set[State]:
    X, O = G.x0, G.o0
    if not filtered:
        return set(kernels.boundary(x, X, O))
    out: set[State] = set()
    for k in range(G.n):
        out.symmetric_difference_update(
            kernels.boundary(x, X, O) if k == 0 else kernels.boundary_k(x, X, O, k)
        )
    return out


def _columns(G: GridDiagram, source: GradedBasis, target: GradedBasis, filtered: bool):
    idx = target.index()
    for x in source.states:
        v = 0
        for y in _differential(G, x, filtered):
            i = idx.get(y)
            if i is None:
                raise AssertionError("differential left the grading one below")
            v ^= 1 << i
        yield v


def membership(G: GridDiagram, target: Iterable[State], limit: int = BRUTE_FORCE_LIMIT) -> bool:
    """Whether ``target`` lies in the image of the tilde differential."""
    target = set(target)
    if not target:
        return True
    _check(G, limit)
    grades = {kernels.maslov(s, G.o0) for s in target}
    if len(grades) != 1:
        raise ValueError("target must have a single Maslov grading")
    d = grades.pop()
    lower = enumerate_states(G, d, limit)
    upper = enumerate_states(G, d + 1, limit)
    idx = lower.index()
    t = 0
    for s in target:
        t |= 1 << idx[s]
    e = _Eliminator()
    for v in _columns(G, upper, lower, filtered=False):
        e.add(v)
    return e.reduce(t) == 0


def homology_dims(
    G: GridDiagram,
    gradings: Iterable[int] | None = None,
    *,
    filtered: bool = False,
    limit: int = HOMOLOGY_LIMIT,
) -> dict[int, int]:
    """Dimension of tilde homology in each Maslov grading.

    With ``filtered=False`` the differential counts marker-free empty
    rectangles (the tilde complex).  ``filtered=True`` allows any number of
    X's (still no O's), i.e. the sum of all Alexander-graded pieces.
    Without ``gradings`` every non-empty grading is computed; this needs
    ``n <= limit``.  An explicit small window may go up to the brute-force
    limit instead.
    """
    if gradings is None:
        _check(G, limit)
        hist = kernels.grading_histogram(G.o0)
        window = sorted(hist)
    else:
        _check(G, max(limit, BRUTE_FORCE_LIMIT))
        window = sorted(set(gradings))
    bases: dict[int, GradedBasis] = {}

    def basis(m: int) -> GradedBasis:
        if m not in bases:
            bases[m] = enumerate_states(G, m, limit=BRUTE_FORCE_LIMIT)
        return bases[m]

    ranks: dict[int, int] = {}

    def rank_from(m: int) -> int:
        # rank of the differential C_m -> C_{m-1}
        if m not in ranks:
            src, dst = basis(m), basis(m - 1)
            ranks[m] = rank_gf2(_columns(G, src, dst, filtered)) if len(src) and len(dst) else 0
        return ranks[m]

    return {m: len(basis(m)) - rank_from(m) - rank_from(m + 1) for m in window}

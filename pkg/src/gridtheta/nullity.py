"""Lazy decision of whether a cycle is a boundary in the tilde complex.

Only the part of the complex connected to the seed matters.  It is grown in
layers: ``A[k+1]`` are the states with a differential into ``B[k]`` (other
than ``A[k]``), ``B[k+1]`` the new targets of ``A[k+1]``.  Targets of
``A[k+1]`` always lie in ``B[k]`` or ``B[k+1]``, so the layers are disjoint
and duplicate detection needs only the previous layer.

A distinguished column ``a0`` with boundary equal to the seed is added
(the mapping cone of the seed), and edges are contracted GF(2)-style.  The
seed is a boundary exactly when ``a0``'s column can be cleared.

Two schedules are provided:

``staged``
    build the whole closure, then contract only edges into neighbours of
    ``a0`` until ``a0`` is empty (null) or none of its neighbours has another
    incoming edge (not null).
``interleaved``
    once ``A[k+1]`` is known every row of ``B[k]`` has all of its incoming
    edges, so those rows are eliminated right away and earlier layers are
    forgotten.  A complete row hit only by ``a0`` proves non-nullity early.
"""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import kernels
from .grid import GridDiagram, State

__all__ = [
    "A0",
    "Result",
    "Mode",
    "NullityStats",
    "Verdict",
    "ResourceLimitExceeded",
    "SeedNotClosedError",
    "ConeComplex",
    "build_next_layer",
    "is_null",
    "DEFAULT_MAX_LIVE",
    "BYTES_PER_LIVE",
    "max_live_for_memory",
    "parse_memory",
]

#: Key of the distinguished generator; no grid state has length zero.
A0: State = b""

#: Rough resident bytes per live generator, measured on grid number 17 runs.
BYTES_PER_LIVE = {"compiled": 800, "python": 1600}

#: About 16 GB worth of live generators for the compiled engine.
DEFAULT_MAX_LIVE = 20_000_000

log = logging.getLogger(__name__)


class Result(str, enum.Enum):
    NULL = "Null"
    NONNULL = "NonNull"


class Mode(str, enum.Enum):
    STAGED = "staged"
    INTERLEAVED = "interleaved"


class ResourceLimitExceeded(RuntimeError):
    """The live complex outgrew the configured cap; no verdict was reached."""

    def __init__(self, live: int, cap: int):
        super().__init__(f"inconclusive: {live} live generators exceeds cap {cap}")
        self.live = live
        self.cap = cap


class SeedNotClosedError(ValueError):
    pass


@dataclass
class NullityStats:
    states_visited: int = 0
    layers_built: int = 0
    contractions_performed: int = 0
    peak_live_generators: int = 0
    wall_time: float = 0.0


@dataclass
class Verdict:
    result: Result
    stats: NullityStats
    #: ``(A[k], B[k])`` for k = 0, 1, ... when requested with ``record_layers``.
    layers: list[tuple[frozenset, frozenset]] | None = field(default=None, repr=False)

    @property
    def is_null(self) -> bool:
        return self.result is Result.NULL


class ConeComplex:
    """Sparse bipartite GF(2) complex with the distinguished column ``a0``.

    ``out[a]`` is the set of rows hit by column ``a``; ``inc[b]`` the set of
    columns hitting row ``b``.  ``a0`` is stored under the key :data:`A0`.
    """

    def __init__(self, seed: Iterable[State], keep_log: bool = True):
        seed = list(dict.fromkeys(seed))
        self.out: dict[State, set[State]] = {A0: set(seed)}
        self.inc: dict[State, set[State]] = {b: {A0} for b in seed}
        # pivot pairs in order; off for large runs since it pins every eliminated state
        self.keep_log = keep_log
        self.elimination_log: list[tuple[State, State]] = []
        self.eliminated: set[State] = set()

    @property
    def live(self) -> int:
        return len(self.out) + len(self.inc)

    def a0_edges(self) -> set[State]:
        return self.out[A0]

    def add_generator(self, a: State, targets: Iterable[State]) -> None:
        if a in self.out:
            raise ValueError("generator already present")
        targets = set(targets)
        if self.keep_log and not targets.isdisjoint(self.eliminated):
            raise AssertionError("new generator hits an eliminated row")
        self.out[a] = targets
        inc = self.inc
        for b in targets:
            s = inc.get(b)
            if s is None:
                inc[b] = {a}
            else:
                s.add(a)

    def add_edge(self, a: State, b: State) -> None:
        """Toggle a single edge (for building small complexes by hand)."""
        self.out.setdefault(a, set())
        self._toggle(a, b)

    def _toggle(self, a: State, b: State) -> None:
        col = self.out[a]
        row = self.inc.get(b)
        if b in col:
            col.discard(b)
            row.discard(a)
        else:
            col.add(b)
            if row is None:
                self.inc[b] = {a}
            else:
                row.add(a)

    def contract_edge(self, a: State, b: State) -> None:
        """Cancel the edge ``a -> b`` and rewire its neighbours.

        Every other column ``a'`` into ``b`` gets ``out[a]`` added to it
        mod 2 (the basis change ``a' -> a' + a``), then ``a`` and ``b`` are
        removed.
        """
        if a == A0:
            raise ValueError("the distinguished generator is never contracted")
        col = self.out[a]
        if b not in col:
            raise ValueError("no such edge")
        rest = col - {b}
        out, inc = self.out, self.inc
        for ap in list(inc[b]):
            if ap == a:
                continue
            cp = out[ap]
            cp.symmetric_difference_update(rest)
            for bp in rest:
                row = inc.get(bp)
                if bp in cp:
                    if row is None:
                        inc[bp] = {ap}
                    else:
                        row.add(ap)
                else:
                    row.discard(ap)
            cp.discard(b)
        for bp in rest:
            inc[bp].discard(a)
        del out[a]
        del inc[b]
        if self.keep_log:
            self.elimination_log.append((a, b))
            self.eliminated.add(b)

    def drop_column(self, a: State) -> None:
        for b in self.out.pop(a):
            self.inc[b].discard(a)

    def drop_row(self, b: State) -> None:
        for a in self.inc.pop(b):
            self.out[a].discard(b)

    def eligible_edge(self) -> tuple[State, State] | None:
        """Lowest ``(a, b)`` with ``b`` adjacent to ``a0`` and ``a != a0``."""
        best = None
        for b in self.out[A0]:
            for a in self.inc[b]:
                if a != A0 and (best is None or (a, b) < best):
                    best = (a, b)
        return best

    def contraction_loop(self, stats: NullityStats | None = None) -> Result:
        while self.out[A0]:
            e = self.eligible_edge()
            if e is None:
                return Result.NONNULL
            self.contract_edge(*e)
            if stats is not None:
                stats.contractions_performed += 1
        return Result.NULL


def build_next_layer(
    frontier_B: Iterable[State],
    previous_A: set | dict,
    G: GridDiagram,
    exclude_B: Callable[[State], bool] | None = None,
) -> tuple[dict[State, list[State]], dict[State, None]]:
    """Grow one layer.

    Returns ``(new_A, new_B)``: ``new_A`` maps each new source state to its
    full tilde boundary, ``new_B`` holds (in discovery order) the targets not
    already among ``frontier_B`` / excluded.
    """
    X, O = G.x0, G.o0
    coboundary, boundary = kernels.coboundary, kernels.boundary
    frontier = frontier_B if isinstance(frontier_B, (set, dict, frozenset)) else set(frontier_B)
    new_A: dict[State, list[State]] = {}
    for b in frontier:
        for a in coboundary(b, X, O):
            if a not in new_A and a not in previous_A:
                new_A[a] = boundary(a, X, O)
    new_B: dict[State, None] = {}
    for targets in new_A.values():
        for y in targets:
            if y not in frontier and y not in new_B and not (exclude_B and exclude_B(y)):
                new_B[y] = None
    return new_A, new_B


def parse_memory(text: str | int) -> int:
    """``"16G"``, ``"512M"``, ``"2048K"`` or a plain byte count."""
    if isinstance(text, int):
        return text
    t = text.strip().upper().removesuffix("B")
    mult = {"K": 1 << 10, "M": 1 << 20, "G": 1 << 30, "T": 1 << 40}
    try:
        if t and t[-1] in mult:
            return int(float(t[:-1]) * mult[t[-1]])
        return int(t)
    except ValueError:
        raise ValueError(f"bad memory size {text!r}") from None


def max_live_for_memory(nbytes: int, engine: str | None = None) -> int:
    """Live-generator cap corresponding to a memory budget."""
    if engine is None:
        engine = "compiled" if kernels.compiled_engine() is not None else "python"
    return max(1, nbytes // BYTES_PER_LIVE[engine])


def _check_seed(G: GridDiagram, seed: list[State]) -> int:
    X, O = G.x0, G.o0
    grades = {kernels.maslov(s, O) for s in seed}
    if len(grades) != 1:
        raise SeedNotClosedError(f"seed has mixed Maslov gradings {sorted(grades)}")
    acc: set[State] = set()
    for s in seed:
        acc.symmetric_difference_update(kernels.boundary(s, X, O))
    if acc:
        raise SeedNotClosedError(f"seed is not a cycle ({len(acc)} boundary terms)")
    return grades.pop()


def is_null(
    G: GridDiagram,
    seed: Iterable[State],
    mode: Mode | str = Mode.INTERLEAVED,
    *,
    max_live: int | None = DEFAULT_MAX_LIVE,
    record_layers: bool = False,
    check_gradings: bool = False,
    engine: str = "auto",
) -> Verdict:
    """Decide whether ``seed`` is a boundary of the tilde differential.

    ``max_live`` caps the number of live generators; exceeding it raises
    :class:`ResourceLimitExceeded` instead of returning a verdict.
    ``check_gradings`` asserts that every A-side state sits one Maslov
    grading above the seed and every B-side state at the seed's grading.
    """
    t0 = time.perf_counter()
    mode = Mode(mode)
    seed = sorted(set(seed))
    stats = NullityStats()
    if not seed:
        stats.wall_time = time.perf_counter() - t0
        return Verdict(Result.NULL, stats, [] if record_layers else None)
    d = _check_seed(G, seed)
    if mode is Mode.STAGED:
        result, layers = _staged(G, seed, d, stats, max_live, record_layers, check_gradings)
    elif _use_compiled(G, engine, record_layers or check_gradings):
        result, layers = _interleaved_compiled(G, seed, stats, max_live), None
    else:
        result, layers = _interleaved(G, seed, d, stats, max_live, record_layers, check_gradings)
    stats.wall_time = time.perf_counter() - t0
    return Verdict(result, stats, layers)


def _grading_guard(G: GridDiagram, states: Iterable[State], expected: int) -> None:
    O = G.o0
    for s in states:
        m = kernels.maslov(s, O)
        if m != expected:
            raise AssertionError(f"state {tuple(v + 1 for v in s)} has M={m}, expected {expected}")


def _cap(stats: NullityStats, live: int, max_live: int | None) -> None:
    if live > stats.peak_live_generators:
        stats.peak_live_generators = live
    if max_live is not None and live > max_live:
        raise ResourceLimitExceeded(live, max_live)


def _staged(G, seed, d, stats, max_live, record_layers, check_gradings):
    cone = ConeComplex(seed)
    layers = [(frozenset(), frozenset(seed))] if record_layers else None
    visited_A: set[State] = set()
    visited_B: set[State] = set(seed)
    frontier: dict[State, None] = dict.fromkeys(seed)
    stats.states_visited = len(seed)
    while frontier:
        new_A, new_B = build_next_layer(frontier, visited_A, G, exclude_B=visited_B.__contains__)
        if not new_A:
            break
        stats.layers_built += 1
        if check_gradings:
            _grading_guard(G, new_A, d + 1)
            _grading_guard(G, new_B, d)
        for a, targets in new_A.items():
            cone.add_generator(a, targets)
        visited_A.update(new_A)
        visited_B.update(new_B)
        stats.states_visited += len(new_A) + len(new_B)
        _cap(stats, cone.live, max_live)
        if layers is not None:
            layers.append((frozenset(new_A), frozenset(new_B)))
        frontier = new_B
    return cone.contraction_loop(stats), layers


def _use_compiled(G: GridDiagram, engine: str, bookkeeping: bool) -> bool:
    if engine not in ("auto", "compiled", "python"):
        raise ValueError(f"unknown engine {engine!r}")
    fn = kernels.compiled_engine()
    if engine == "compiled":
        if fn is None:
            raise RuntimeError("compiled engine not available")
        if bookkeeping or G.n > kernels.ENGINE_MAX_N:
            raise ValueError("compiled engine does not record layers or support this n")
        return True
    return engine == "auto" and fn is not None and not bookkeeping and G.n <= kernels.ENGINE_MAX_N


def _interleaved_compiled(G, seed, stats, max_live):
    def progress(layer, na, nb, live, a0):
        log.info("layer %d: |A|=%d |B|=%d live=%d a0=%d", layer, na, nb, live, a0)

    status, visited, layers, contractions, peak, live = kernels.compiled_engine()(
        G.x0, G.o0, list(seed), -1 if max_live is None else max_live, progress
    )
    stats.states_visited = visited
    stats.layers_built = layers
    stats.contractions_performed = contractions
    stats.peak_live_generators = peak
    if status == "cap":
        raise ResourceLimitExceeded(live, max_live)
    return Result(status)


def _interleaved(G, seed, d, stats, max_live, record_layers, check_gradings):
    cone = ConeComplex(seed, keep_log=record_layers)
    out, inc = cone.out, cone.inc
    layers = [(frozenset(), frozenset(seed))] if record_layers else None
    prev_A: dict[State, None] = {}
    frontier: dict[State, None] = dict.fromkeys(seed)
    stats.states_visited = len(seed)
    while frontier:
        new_A, new_B = build_next_layer(frontier, prev_A, G)
        if new_A:
            stats.layers_built += 1
            if check_gradings:
                _grading_guard(G, new_A, d + 1)
                _grading_guard(G, new_B, d)
            for a, targets in new_A.items():
                cone.add_generator(a, targets)
            stats.states_visited += len(new_A) + len(new_B)
            _cap(stats, cone.live, max_live)
            if layers is not None:
                layers.append((frozenset(new_A), frozenset(new_B)))
        log.info("layer %d: |A|=%d |B|=%d live=%d a0=%d", stats.layers_built,
                 len(new_A), len(new_B), cone.live, len(out[A0]))
        # rows of the frontier are now complete: eliminate them
        for b in sorted(frontier):
            row = inc.get(b)
            if row is None:
                continue
            pivot = None
            best = None
            for a in row:
                if a != A0:
                    key = (len(out[a]), a)
                    if best is None or key < best:
                        best, pivot = key, a
            if pivot is not None:
                cone.contract_edge(pivot, b)
                stats.contractions_performed += 1
            elif row:
                # only a0 reaches a row nothing else can ever reach
                return Result.NONNULL, layers
            else:
                del inc[b]
            if not out[A0]:
                return Result.NULL, layers
        for a in [a for a, col in out.items() if not col and a != A0]:
            del out[a]
        prev_A = dict.fromkeys(new_A)
        frontier = new_B
    return (Result.NULL if not out[A0] else Result.NONNULL), layers

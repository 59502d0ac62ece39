"""Grid diagrams: parsing, validation, gradings, classical invariants, braids.

Conventions
-----------
Columns are numbered left to right and rows bottom to top, both from 1 in
the public tuples.  ``X[i]`` is the row of the X marking in column ``i``.

A *state* is stored as a ``bytes`` object of length ``n`` holding 0-based
rows: ``s[c]`` is the horizontal circle (bottom edge of row ``s[c] + 1``)
met on vertical circle ``c`` (left edge of column ``c + 1``).  The public
1-based tuple of a state is ``tuple(v + 1 for v in s)``; use
:func:`as_state` and :func:`state_tuple` to convert.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "GridError",
    "GridParseError",
    "NotAKnotError",
    "GridDiagram",
    "ClassicalInvariants",
    "BraidWord",
    "parse_grid",
    "load_grid",
    "format_grid",
    "as_state",
    "state_tuple",
    "iota_count",
    "maslov",
    "alexander",
    "classical_invariants",
    "grid_to_braid",
]


class GridError(ValueError):
    """Base class for invalid grid input."""


class GridParseError(GridError):
    """Malformed grid text or tuples that do not define a grid diagram."""


class NotAKnotError(GridError):
    """The diagram is a valid grid but describes a link with several components."""


State = bytes


def as_state(values: Sequence[int] | bytes) -> State:
    """Convert a 1-based row tuple to the internal state encoding."""
    if isinstance(values, (bytes, bytearray)):
        return bytes(values)
    return bytes(v - 1 for v in values)


def state_tuple(s: State) -> tuple[int, ...]:
    return tuple(v + 1 for v in s)


def _components(X: Sequence[int], O: Sequence[int]) -> int:
    n = len(X)
    col_of_o = [0] * n
    for c, r in enumerate(O):
        col_of_o[r] = c
    seen = [False] * n
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        c = start
        while not seen[c]:
            seen[c] = True
            # column -> X's row -> O in that row -> its column
            c = col_of_o[X[c]]
    return count


@dataclass(frozen=True)
class GridDiagram:
    """An ``n x n`` toroidal grid diagram of a knot.

    ``X`` and ``O`` are 1-based row tuples indexed by column.  Construction
    validates the diagram and rejects multi-component links.
    """

    X: tuple[int, ...]
    O: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        X = tuple(int(v) for v in self.X)
        O = tuple(int(v) for v in self.O)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "O", O)
        n = len(X)
        if len(O) != n:
            raise GridParseError(f"X has {n} entries but O has {len(O)}")
        if n < 2:
            raise GridParseError("grid number must be at least 2")
        if n > 255:
            raise GridParseError("grid number above 255 is not supported")
        full = set(range(1, n + 1))
        if set(X) != full:
            raise GridParseError(f"X is not a permutation of 1..{n}: {X}")
        if set(O) != full:
            raise GridParseError(f"O is not a permutation of 1..{n}: {O}")
        for i, (x, o) in enumerate(zip(X, O), start=1):
            if x == o:
                raise GridParseError(f"column {i} has X and O in the same square (row {x})")
        k = _components(self.x0, self.o0)
        if k != 1:
            raise NotAKnotError(f"diagram is a {k}-component link, not a knot")

    @property
    def n(self) -> int:
        return len(self.X)

    @cached_property
    def x0(self) -> bytes:
        """0-based X rows as bytes (kernel input)."""
        return bytes(v - 1 for v in self.X)

    @cached_property
    def o0(self) -> bytes:
        """0-based O rows as bytes (kernel input)."""
        return bytes(v - 1 for v in self.O)

    def with_name(self, name: str | None) -> "GridDiagram":
        return GridDiagram(self.X, self.O, name)

    def __str__(self) -> str:
        return format_grid(self).strip()


_LINE = re.compile(r"^\s*(name|X|O)\s*:\s*(.*?)\s*$")


def parse_grid(text: str) -> GridDiagram:
    """Parse the grid-file format.

    Recognised lines are ``name: <label>``, ``X: a1 ... an`` and
    ``O: b1 ... bn``; ``#`` starts a comment.  For one-line use the ``X`` and
    ``O`` parts may also be separated by ``/`` on the same line.
    """
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0]
        for part in line.split("/"):
            if not part.strip():
                continue
            m = _LINE.match(part)
            if m is None:
                raise GridParseError(f"unrecognised line: {raw.strip()!r}")
            key, value = m.groups()
            if key in fields:
                raise GridParseError(f"duplicate {key!r} entry")
            fields[key] = value
    for key in ("X", "O"):
        if key not in fields:
            raise GridParseError(f"missing {key!r} line")
    try:
        X = tuple(int(t) for t in fields["X"].split())
        O = tuple(int(t) for t in fields["O"].split())
    except ValueError as exc:
        raise GridParseError(f"non-integer entry: {exc}") from None
    return GridDiagram(X, O, fields.get("name") or None)


def load_grid(path) -> GridDiagram:
    with open(path, encoding="utf-8") as fh:
        G = parse_grid(fh.read())
    if G.name is None:
        from pathlib import Path

        G = G.with_name(Path(path).stem)
    return G


def format_grid(G: GridDiagram) -> str:
    lines = []
    if G.name:
        lines.append(f"name: {G.name}")
    lines.append("X: " + " ".join(map(str, G.X)))
    lines.append("O: " + " ".join(map(str, G.O)))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# gradings


def iota_count(A: Iterable[Sequence[float]], B: Iterable[Sequence[float]]) -> int:
    """Number of pairs ``(a, b)`` with ``a[0] < b[0]`` and ``a[1] < b[1]``."""
    B = list(B)
    return sum(1 for a in A for b in B if a[0] < b[0] and a[1] < b[1])


def _doubled_points(s: State) -> list[tuple[int, int]]:
    return [(2 * c, 2 * r) for c, r in enumerate(s)]


def _doubled_markers(rows: bytes) -> list[tuple[int, int]]:
    return [(2 * c + 1, 2 * r + 1) for c, r in enumerate(rows)]


def maslov(x: State, G: GridDiagram, markers: str = "O") -> int:
    """Maslov grading ``M_O`` (or ``M_X`` with ``markers="X"``) of a state.

    Evaluated literally from the point-pair counts in doubled integer
    coordinates: state points at even lattice points, markers at odd ones.
    """
    if len(x) != G.n:
        raise ValueError("state and diagram sizes differ")
    if markers == "O":
        rows = G.o0
    elif markers == "X":
        rows = G.x0
    else:
        raise ValueError(f"markers must be 'O' or 'X', not {markers!r}")
    P = _doubled_points(x)
    Q = _doubled_markers(rows)
    return iota_count(P, P) - iota_count(P, Q) - iota_count(Q, P) + iota_count(Q, Q) + 1


def alexander(x: State, G: GridDiagram) -> int:
    twice = maslov(x, G, "O") - maslov(x, G, "X") - (G.n - 1)
    if twice % 2:
        raise NotAKnotError("half-integral Alexander grading; diagram is not a knot")
    return twice // 2


# --------------------------------------------------------------------------
# classical invariants


@dataclass(frozen=True)
class ClassicalInvariants:
    wr: int
    ne_total: int
    ne_x: int
    ne_o: int
    sw_x: int
    sw_o: int
    tb: int
    r: int
    sl_plus: int
    sl_minus: int


def _writhe(G: GridDiagram) -> int:
    n = G.n
    X, O = G.x0, G.o0
    xcol = [0] * n
    ocol = [0] * n
    for c in range(n):
        xcol[X[c]] = c
        ocol[O[c]] = c
    wr = 0
    for c in range(n):
        lo, hi = sorted((X[c], O[c]))
        vy = 1 if O[c] > X[c] else -1  # vertical runs X -> O
        for r in range(lo + 1, hi):
            left, right = sorted((ocol[r], xcol[r]))
            if left < c < right:
                hx = 1 if xcol[r] > ocol[r] else -1  # horizontal runs O -> X
                # vertical strand is over; sign = cross(over, under)
                wr += -vy * hx
    return wr


def classical_invariants(G: GridDiagram) -> ClassicalInvariants:
    """tb, r and the self-linking numbers of both pushoffs, read off the planar diagram."""
    n = G.n
    X, O = G.x0, G.o0
    xcol = [0] * n
    ocol = [0] * n
    for c in range(n):
        xcol[X[c]] = c
        ocol[O[c]] = c
    ne_x = ne_o = sw_x = sw_o = 0
    for c in range(n):
        # X marker at (c, X[c]): its column partner is the O, its row partner the O of that row
        down = O[c] < X[c]
        left = ocol[X[c]] < c
        if down and left:
            ne_x += 1
        elif not down and not left:
            sw_x += 1
        # O marker at (c, O[c])
        down = X[c] < O[c]
        left = xcol[O[c]] < c
        if down and left:
            ne_o += 1
        elif not down and not left:
            sw_o += 1
    wr = _writhe(G)
    ne_total = ne_x + ne_o
    tb = -wr - ne_total
    twice_r = ne_x - ne_o - sw_x + sw_o
    if twice_r % 2:
        raise NotAKnotError("odd corner balance; not a knot diagram")
    r = twice_r // 2
    return ClassicalInvariants(
        wr=wr, ne_total=ne_total, ne_x=ne_x, ne_o=ne_o, sw_x=sw_x, sw_o=sw_o,
        tb=tb, r=r, sl_plus=tb - r, sl_minus=tb + r,
    )


# --------------------------------------------------------------------------
# braids


@dataclass(frozen=True)
class BraidWord:
    strands: int
    word: tuple[int, ...]

    @property
    def exponent_sum(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.word)

    def permutation(self) -> tuple[int, ...]:
        perm = list(range(self.strands))
        for g in self.word:
            i = abs(g) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)

    def closure_components(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for i in range(self.strands):
            if not seen[i]:
                count += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        return count

    def __str__(self) -> str:
        if not self.word:
            return f"{self.strands} strands: (trivial)"
        parts = [f"s{abs(g)}" + ("" if g > 0 else "^-1") for g in self.word]
        return f"{self.strands} strands: " + " ".join(parts)


def grid_to_braid(G: GridDiagram) -> BraidWord:
    """Braid whose closure is the positive transverse pushoff of ``G``.

    Every vertical segment is oriented upward; one with the X above the O
    leaves through the top edge and re-enters at the bottom.  Horizontal
    segments pass over all vertical ones, so sweeping the rows from bottom
    to top, the strand entering at an O slides across the active strands to
    the X of the same row.
    """
    n = G.n
    X, O = G.x0, G.o0
    xcol = [0] * n
    ocol = [0] * n
    for c in range(n):
        xcol[X[c]] = c
        ocol[O[c]] = c

    def active(c: int, h: float) -> bool:
        x, o = X[c], O[c]
        if x < o:
            return x < h < o
        return h > x or h < o

    strands = sum(1 for c in range(n) if X[c] > O[c])
    word: list[int] = []
    for r in range(n):
        h = r  # the row's horizontal segment; vertical spans have half-open ends at rows
        o, x = ocol[r], xcol[r]
        others = [c for c in range(n) if c not in (o, x) and active(c, h)]
        p = 1 + sum(1 for c in others if c < o)
        q = 1 + sum(1 for c in others if c < x)
        if q > p:
            word.extend(range(p, q))
        elif q < p:
            word.extend(-g for g in range(p - 1, q - 1, -1))
    return BraidWord(strands, tuple(word))

"""Grid moves: commutation, (de)stabilization and toroidal rotation.

Conventions (all public positions 1-based, as in grid files):

* ``commute(G, "columns", i)`` swaps columns ``i`` and ``i+1`` (``i = n``
  means columns ``n`` and ``1``); rows likewise.
* ``stabilize(G, c, r, "X:NW")`` acts on the square in column ``c`` and row
  ``r``, which must carry the marker named by the type.  Its column and row
  are split, giving the 2x2 block with lower-left square ``(c, r)``::

        NW | NE          type T:U leaves square U empty, puts the
        ---+---          opposite marker on the square diagonal to U
        SW | SE          and T on the remaining two.

  The other marker of the old column moves into U's column, the other marker
  of the old row into U's row.
* ``destabilize(G, c, r)`` collapses the 2x2 block with lower-left square
  ``(c, r)`` (cyclically) around its centre corner; it is the inverse.
* ``rotate(G, "R")`` moves every column one step right, cyclically; ``"L"``
  left, ``"U"``/``"D"`` act on rows.

Move scripts are text, one move per line::

    rotR
    commC 3
    commR 5
    stab 2 7 O:NW
    destab 4 4
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable

from .grid import GridDiagram, GridError

__all__ = [
    "MoveError",
    "ScriptError",
    "MoveSpec",
    "STAB_TYPES",
    "LEGENDRIAN_TYPES",
    "TRANSVERSE_TYPES",
    "commute",
    "commutation_legal",
    "stabilize",
    "destabilize",
    "destabilization_type",
    "rotate",
    "apply_move",
    "parse_script",
    "format_script",
    "run_script",
    "legal_transverse_moves",
    "random_transverse_move",
    "random_transverse_script",
]

STAB_TYPES = tuple(f"{t}:{c}" for t in "XO" for c in ("NW", "SW", "SE", "NE"))
LEGENDRIAN_TYPES = frozenset({"X:NW", "X:SE", "O:SE", "O:NW"})
#: the transverse subset used for random moves (Legendrian plus one negative type)
TRANSVERSE_TYPES = ("X:NW", "X:SE", "X:SW")

# offset of the unmarked square inside the block: (dc, dr)
_CORNER = {"SW": (0, 0), "SE": (1, 0), "NW": (0, 1), "NE": (1, 1)}
_CORNER_NAME = {v: k for k, v in _CORNER.items()}


class MoveError(GridError):
    """An illegal move for the diagram at hand."""

    def __init__(self, msg: str, step: int | None = None):
        super().__init__(msg if step is None else f"step {step}: {msg}")
        self.step = step


class ScriptError(GridError):
    """Malformed move-script text."""


@dataclass(frozen=True)
class MoveSpec:
    kind: str  # commute_columns | commute_rows | stabilize | destabilize | rotate
    a: int = 0
    b: int = 0
    arg: str = ""

    def __str__(self) -> str:
        if self.kind == "commute_columns":
            return f"commC {self.a}"
        if self.kind == "commute_rows":
            return f"commR {self.a}"
        if self.kind == "stabilize":
            return f"stab {self.a} {self.b} {self.arg}"
        if self.kind == "destabilize":
            return f"destab {self.a} {self.b}"
        return f"rot{self.arg}"


def _grid(xs, os, name="") -> GridDiagram:
    return GridDiagram(tuple(v + 1 for v in xs), tuple(v + 1 for v in os), name)


def _lists(G: GridDiagram):
    return list(G.x0), list(G.o0)


# -- commutation ------------------------------------------------------------


def _interleaved(p: tuple[int, int], q: tuple[int, int]) -> bool:
    # a shared endpoint counts as separating: swapping would reverse the two
    # markers on that line, which is a (de)stabilization, not a commutation
    if set(p) & set(q):
        return True
    a1, b1 = sorted(p)
    a2, b2 = sorted(q)
    return a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1


def commutation_legal(G: GridDiagram, which: str, i: int) -> bool:
    n = G.n
    if not 1 <= i <= n:
        raise MoveError(f"commutation index {i} out of range 1..{n}")
    j, k = i - 1, i % n
    if which == "columns":
        return not _interleaved((G.x0[j], G.o0[j]), (G.x0[k], G.o0[k]))
    if which == "rows":
        cx, co = _row_positions(G)
        return not _interleaved((cx[j], co[j]), (cx[k], co[k]))
    raise ValueError("which must be 'rows' or 'columns'")


def _row_positions(G: GridDiagram):
    n = G.n
    cx, co = [0] * n, [0] * n
    for c in range(n):
        cx[G.x0[c]] = c
        co[G.o0[c]] = c
    return cx, co


def commute(G: GridDiagram, which: str, i: int) -> GridDiagram:
    """Swap the decorations of lines ``i`` and ``i+1`` if they do not separate."""
    if not commutation_legal(G, which, i):
        raise MoveError(f"{which} {i} and {i % G.n + 1} interleave")
    n = G.n
    j, k = i - 1, i % n
    xs, os = _lists(G)
    if which == "columns":
        xs[j], xs[k] = xs[k], xs[j]
        os[j], os[k] = os[k], os[j]
    else:
        swap = {j: k, k: j}
        xs = [swap.get(v, v) for v in xs]
        os = [swap.get(v, v) for v in os]
    return _grid(xs, os, G.name)


# -- rotation ---------------------------------------------------------------


def rotate(G: GridDiagram, direction: str) -> GridDiagram:
    n = G.n
    xs, os = _lists(G)
    d = direction.upper()
    if d in ("R", "L"):
        s = 1 if d == "R" else n - 1
        xs = [xs[(c - s) % n] for c in range(n)]
        os = [os[(c - s) % n] for c in range(n)]
    elif d in ("U", "D"):
        s = 1 if d == "U" else n - 1
        xs = [(v + s) % n for v in xs]
        os = [(v + s) % n for v in os]
    else:
        raise MoveError(f"unknown rotation direction {direction!r}")
    return _grid(xs, os, G.name)


def _shift(G: GridDiagram, dc: int, dr: int) -> GridDiagram:
    n = G.n
    xs, os = _lists(G)
    xs = [(xs[(c - dc) % n] + dr) % n for c in range(n)]
    os = [(os[(c - dc) % n] + dr) % n for c in range(n)]
    return _grid(xs, os, G.name)


# -- (de)stabilization ------------------------------------------------------


def _split_type(t: str) -> tuple[str, int, int]:
    t = t.upper()
    if t not in STAB_TYPES:
        raise MoveError(f"unknown stabilization type {t!r}")
    mark, corner = t.split(":")
    dc, dr = _CORNER[corner]
    return mark, dc, dr


def stabilize(G: GridDiagram, c: int, r: int, type_: str) -> GridDiagram:
    n = G.n
    if not (1 <= c <= n and 1 <= r <= n):
        raise MoveError(f"square ({c}, {r}) outside the {n}x{n} grid")
    mark, dc, dr = _split_type(type_)
    c0, r0 = c - 1, r - 1
    T, other = (G.x0, G.o0) if mark == "X" else (G.o0, G.x0)
    if T[c0] != r0:
        raise MoveError(f"square ({c}, {r}) does not carry an {mark} for {type_}")
    if n >= 255:
        raise MoveError("grid too large to stabilize")

    def row(i):
        return i if i < r0 else i + 1

    nT = [0] * (n + 1)
    nOther = [0] * (n + 1)
    # old row r0's other marker sits at column cp; it moves into U's row
    cp = other.index(r0)
    for j in range(n):
        if j == c0:
            continue
        jj = j if j < c0 else j + 1
        nT[jj] = row(T[j])
        nOther[jj] = r0 + dr if j == cp else row(other[j])
    u, dcol = c0 + dc, c0 + 1 - dc
    nT[u] = r0 + 1 - dr
    nOther[u] = row(other[c0])
    nOther[dcol] = r0 + 1 - dr
    nT[dcol] = r0 + dr
    xs, os = (nT, nOther) if mark == "X" else (nOther, nT)
    return _grid(xs, os, G.name)


def _block(G: GridDiagram, c0: int, r0: int):
    """Markers in the 2x2 block with lower-left square (c0, r0), no wrap."""
    cells = {}
    for dc in (0, 1):
        col = c0 + dc
        for dr in (0, 1):
            rr = r0 + dr
            if G.x0[col] == rr:
                cells[(dc, dr)] = "X"
            elif G.o0[col] == rr:
                cells[(dc, dr)] = "O"
    return cells


def _classify(cells) -> str | None:
    if len(cells) != 3:
        return None
    (u,) = [q for q in _CORNER_NAME if q not in cells]
    d = (1 - u[0], 1 - u[1])
    s1, s2 = (u[0], 1 - u[1]), (1 - u[0], u[1])
    if cells[s1] != cells[s2] or cells[d] == cells[s1]:
        return None
    return f"{cells[s1]}:{_CORNER_NAME[u]}"


def destabilization_type(G: GridDiagram, c: int, r: int) -> str | None:
    """Type of the destabilization at the block with lower-left (c, r), or None."""
    n = G.n
    if n < 3 or not (1 <= c <= n and 1 <= r <= n):
        return None
    sc = 1 if c == n else 0
    sr = 1 if r == n else 0
    H = _shift(G, -sc, -sr) if sc or sr else G
    return _classify(_block(H, c - 1 - sc, r - 1 - sr))


def destabilize(G: GridDiagram, c: int, r: int) -> GridDiagram:
    n = G.n
    if not (1 <= c <= n and 1 <= r <= n):
        raise MoveError(f"corner ({c}, {r}) outside the {n}x{n} grid")
    if n < 3:
        raise MoveError("cannot destabilize below grid number 2")
    # a block straddling the cut is moved inside first and moved back after
    sc = 1 if c == n else 0
    sr = 1 if r == n else 0
    H = _shift(G, -sc, -sr) if sc or sr else G
    c0, r0 = c - 1 - sc, r - 1 - sr
    t = _classify(_block(H, c0, r0))
    if t is None:
        raise MoveError(f"no destabilization at corner ({c}, {r})")
    _, dc, dr = _split_type(t)
    drop = c0 + 1 - dc  # the column holding the stacked X/O pair

    def row(i):
        return i if i <= r0 else i - 1

    xs, os = [], []
    for j in range(n):
        if j == drop:
            continue
        xs.append(row(H.x0[j]))
        os.append(row(H.o0[j]))
    out = _grid(xs, os, G.name)
    return _shift(out, sc, sr) if sc or sr else out


# -- scripts ----------------------------------------------------------------

_LINE = re.compile(
    r"^(?:(?P<rot>rot[LRUD])|comm(?P<cw>[CR])\s+(?P<ci>\d+)"
    r"|stab\s+(?P<sc>\d+)\s+(?P<sr>\d+)\s+(?P<st>[XOxo]:[NSns][EWew])"
    r"|destab\s+(?P<dc>\d+)\s+(?P<dr>\d+))$"
)


def parse_script(text: str) -> list[MoveSpec]:
    moves = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if m is None:
            raise ScriptError(f"line {lineno}: cannot parse move {raw.strip()!r}")
        if m["rot"]:
            moves.append(MoveSpec("rotate", arg=m["rot"][3]))
        elif m["cw"]:
            kind = "commute_columns" if m["cw"] == "C" else "commute_rows"
            moves.append(MoveSpec(kind, int(m["ci"])))
        elif m["st"]:
            moves.append(MoveSpec("stabilize", int(m["sc"]), int(m["sr"]), m["st"].upper()))
        else:
            moves.append(MoveSpec("destabilize", int(m["dc"]), int(m["dr"])))
    return moves


def format_script(moves: Iterable[MoveSpec]) -> str:
    return "".join(f"{m}\n" for m in moves)


def apply_move(G: GridDiagram, m: MoveSpec) -> GridDiagram:
    if m.kind == "rotate":
        return rotate(G, m.arg)
    if m.kind == "commute_columns":
        return commute(G, "columns", m.a)
    if m.kind == "commute_rows":
        return commute(G, "rows", m.a)
    if m.kind == "stabilize":
        return stabilize(G, m.a, m.b, m.arg)
    if m.kind == "destabilize":
        return destabilize(G, m.a, m.b)
    raise MoveError(f"unknown move kind {m.kind!r}")


def run_script(G: GridDiagram, moves: Iterable[MoveSpec] | str) -> GridDiagram:
    """Apply moves in order; failures carry the 1-based ``step``."""
    if isinstance(moves, str):
        moves = parse_script(moves)
    for step, m in enumerate(moves, 1):
        try:
            G = apply_move(G, m)
        except MoveError as e:
            raise MoveError(str(e), step) from None
    return G


# -- random transverse moves ------------------------------------------------


def legal_transverse_moves(G: GridDiagram, max_n: int | None = None) -> list[MoveSpec]:
    """Commutations plus (de)stabilizations of the transverse types.

    ``max_n`` suppresses stabilizations that would exceed it.
    """
    n = G.n
    out = []
    for i in range(1, n + 1):
        if commutation_legal(G, "columns", i):
            out.append(MoveSpec("commute_columns", i))
        if commutation_legal(G, "rows", i):
            out.append(MoveSpec("commute_rows", i))
    if max_n is None or n + 1 <= max_n:
        for c in range(1, n + 1):
            for t in TRANSVERSE_TYPES:
                out.append(MoveSpec("stabilize", c, G.X[c - 1], t))
    for c in range(1, n + 1):
        for r in range(1, n + 1):
            if destabilization_type(G, c, r) in TRANSVERSE_TYPES:
                out.append(MoveSpec("destabilize", c, r))
    return out


def random_transverse_move(
    G: GridDiagram, seed: int | random.Random | None = None, max_n: int | None = None
) -> tuple[MoveSpec, GridDiagram]:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    m = rng.choice(legal_transverse_moves(G, max_n))
    return m, apply_move(G, m)


def random_transverse_script(
    G: GridDiagram, length: int, seed: int | None = None, max_n: int | None = None
) -> tuple[list[MoveSpec], GridDiagram]:
    rng = random.Random(seed)
    moves = []
    for _ in range(length):
        m, G = random_transverse_move(G, rng, max_n)
        moves.append(m)
    return moves, G

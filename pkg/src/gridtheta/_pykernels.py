"""Pure-Python rectangle kernels.

Same call signatures and results as the compiled ``_ckernels`` module; used
when the extension is unavailable or ``GRIDTHETA_PURE=1`` is set.

States, X and O are ``bytes`` of 0-based rows.  A rectangle is named by the
ordered column pair ``(ca, cb)``: it spans the columns from ``ca`` rightward
(cyclically) to ``cb`` and its lower-left and upper-right corners are points
of the source state.  Every ordered pair gives exactly one rectangle, so the
two rectangles joining ``x`` and ``y`` come from ``(ca, cb)`` and ``(cb, ca)``.
"""

from __future__ import annotations

from itertools import permutations

BACKEND = "python"


def _toggle(out: dict, y: bytes) -> None:
    if y in out:
        del out[y]
    else:
        out[y] = None


def _swap(x: bytes, a: int, b: int) -> bytes:
    buf = bytearray(x)
    buf[a], buf[b] = buf[b], buf[a]
    return bytes(buf)


def boundary(x: bytes, X: bytes, O: bytes) -> list[bytes]:
    """Targets of empty, marker-free rectangles out of ``x`` (mod 2)."""
    n = len(x)
    out: dict[bytes, None] = {}
    for ca in range(n):
        ra = x[ca]
        bound = min((X[ca] - ra) % n, (O[ca] - ra) % n)
        w = 1
        while bound > 0 and w < n:
            cb = (ca + w) % n
            h = (x[cb] - ra) % n
            if h <= bound:
                _toggle(out, _swap(x, ca, cb))
                bound = h
            bound = min(bound, (X[cb] - ra) % n, (O[cb] - ra) % n)
            w += 1
    return list(out)


def coboundary(y: bytes, X: bytes, O: bytes) -> list[bytes]:
    """Sources ``x`` with ``y`` in ``boundary(x)``."""
    n = len(y)
    out: dict[bytes, None] = {}
    for ca in range(n):
        top = y[ca]
        # a marker cell in row r lies inside iff its depth (top - 1 - r) mod n < height
        bound = min((top - 1 - X[ca]) % n, (top - 1 - O[ca]) % n)
        w = 1
        while bound > 0 and w < n:
            cb = (ca + w) % n
            h = (top - y[cb]) % n
            if h <= bound:
                _toggle(out, _swap(y, ca, cb))
                bound = h
            bound = min(bound, (top - 1 - X[cb]) % n, (top - 1 - O[cb]) % n)
            w += 1
    return list(out)


def boundary_k(x: bytes, X: bytes, O: bytes, k: int) -> list[bytes]:
    """Targets of empty rectangles with no O and exactly ``k`` X's (mod 2)."""
    n = len(x)
    out: dict[bytes, None] = {}
    for ca in range(n):
        ra = x[ca]
        o_bound = (O[ca] - ra) % n
        s_bound = n
        xs = [(X[ca] - ra) % n]
        for w in range(1, n):
            cb = (ca + w) % n
            h = (x[cb] - ra) % n
            if h <= o_bound and h <= s_bound and sum(1 for e in xs if e < h) == k:
                _toggle(out, _swap(x, ca, cb))
            s_bound = min(s_bound, h)
            o_bound = min(o_bound, (O[cb] - ra) % n)
            if o_bound == 0:
                break
            xs.append((X[cb] - ra) % n)
    return list(out)


def maslov(x: bytes, M: bytes) -> int:
    """``M_markers(x)`` for the marker rows ``M`` (pass X or O)."""
    n = len(x)
    total = 1
    for i in range(n):
        xi = x[i]
        mi = M[i]
        for j in range(i + 1, n):
            if xi < x[j]:
                total += 1
            if mi < M[j]:
                total += 1
    for i in range(n):
        xi = x[i]
        for c in range(n):
            mc = M[c]
            # state (i, xi) vs marker (c + 1/2, mc + 1/2)
            if i <= c and xi <= mc:
                total -= 1
            elif c < i and mc < xi:
                total -= 1
    return total


def states_in_grading(M: bytes, m: int) -> list[bytes]:
    """All states with ``M_markers = m`` in lexicographic order."""
    n = len(M)
    return [bytes(p) for p in permutations(range(n)) if maslov(bytes(p), M) == m]


def grading_histogram(M: bytes) -> dict[int, int]:
    n = len(M)
    hist: dict[int, int] = {}
    for p in permutations(range(n)):
        m = maslov(bytes(p), M)
        hist[m] = hist.get(m, 0) + 1
    return hist

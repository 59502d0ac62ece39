"""The distinguished cycles x+ / x- and the seeds fed to the nullity test."""

from __future__ import annotations

import enum

from .grid import GridDiagram, State, alexander, classical_invariants, maslov
from .rectangles import Chain, tilde_boundary, tilde_boundary_k

__all__ = ["Sign", "Refine", "theta_cycle", "grading_check", "delta1_seed", "seed_chain"]


class Sign(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


class Refine(str, enum.Enum):
    THETA = "theta"
    DELTA1 = "delta1"


def theta_cycle(G: GridDiagram, sign: Sign | str) -> State:
    """x- sits at the lower-left corner of every X square, x+ at the upper-right."""
    sign = Sign(sign)
    if sign is Sign.MINUS:
        return G.x0
    n = G.n
    buf = bytearray(n)
    for c, r in enumerate(G.x0):
        buf[(c + 1) % n] = (r + 1) % n
    return bytes(buf)


def grading_check(G: GridDiagram, sign: Sign | str) -> tuple[int, int]:
    """(M, A) of the theta cycle, asserting M = sl + 1 and 2A = M."""
    sign = Sign(sign)
    x = theta_cycle(G, sign)
    m, a = maslov(x, G), alexander(x, G)
    ci = classical_invariants(G)
    sl = ci.sl_plus if sign is Sign.PLUS else ci.sl_minus
    if m != sl + 1 or 2 * a != m:
        raise AssertionError(
            f"grading mismatch for {G.name or G}: (M, A) = ({m}, {a}) but sl = {sl}"
        )
    return m, a


def delta1_seed(G: GridDiagram, sign: Sign | str) -> Chain:
    """Terms of the one-X differential applied to the theta cycle."""
    return tilde_boundary_k(theta_cycle(G, sign), G, 1)


def seed_chain(G: GridDiagram, sign: Sign | str, refine: Refine | str = Refine.THETA) -> Chain:
    if Refine(refine) is Refine.THETA:
        x = theta_cycle(G, sign)
        if tilde_boundary(x, G):
            raise AssertionError("theta cycle is not a cycle")
        return Chain([x])
    return delta1_seed(G, sign)

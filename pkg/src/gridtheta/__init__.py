"""Combinatorial Legendrian and transverse invariants from grid diagrams.

Decides whether the distinguished grid cycles x+ and x- (and their one-X
refinements) vanish in tilde grid homology, without building the whole
chain complex.
"""

__version__ = "0.1.0"

from .grid import (  # noqa: E402
    GridDiagram,
    GridError,
    GridParseError,
    NotAKnotError,
    classical_invariants,
    grid_to_braid,
    load_grid,
    parse_grid,
)
from .invariant import Refine, Sign, seed_chain, theta_cycle  # noqa: E402
from .nullity import Mode, Result, ResourceLimitExceeded, is_null  # noqa: E402

__all__ = [
    "__version__",
    "GridDiagram",
    "GridError",
    "GridParseError",
    "NotAKnotError",
    "classical_invariants",
    "grid_to_braid",
    "load_grid",
    "parse_grid",
    "Refine",
    "Sign",
    "seed_chain",
    "theta_cycle",
    "Mode",
    "Result",
    "ResourceLimitExceeded",
    "is_null",
    "corpus_path",
]


def corpus_path(name: str = ""):
    """Path of the bundled corpus directory, or of one file in it."""
    from pathlib import Path

    p = Path(__file__).with_name("corpus")
    return p / name if name else p

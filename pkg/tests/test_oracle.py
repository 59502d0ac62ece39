import random

import pytest
from hypothesis import given, settings

from _support import TREFOIL5, TREFOIL5_MIRROR, UNKNOT2, UNKNOT3, knot_and_state, knots, random_knot
from gridtheta import kernels
from gridtheta.grid import GridDiagram, maslov
from gridtheta.invariant import seed_chain
from gridtheta.moves import rotate
from gridtheta.nullity import is_null
from gridtheta.oracle import (
    BRUTE_FORCE_LIMIT,
    OracleLimitError,
    enumerate_states,
    homology_dims,
    membership,
    rank_gf2,
)
from gridtheta.rectangles import tilde_boundary


def test_enumerate_unknot2():
    # the two states of the 2x2 grid sit in gradings 0 and -1
    hist = {m: len(enumerate_states(UNKNOT2, m)) for m in (-2, -1, 0, 1)}
    assert sum(hist.values()) == 2
    assert all(v <= 1 for v in hist.values())


def test_enumerate_partitions_all_states():
    G = TREFOIL5
    hist = kernels.grading_histogram(G.o0)
    assert sum(hist.values()) == 120
    for m, count in hist.items():
        b = enumerate_states(G, m)
        assert len(b) == count
        assert list(b.states) == sorted(b.states)
        assert all(maslov(s, G) == m for s in b.states)


def test_rank_gf2():
    assert rank_gf2([]) == 0
    assert rank_gf2([0b11, 0b110, 0b101]) == 2
    assert rank_gf2([1, 2, 4, 8]) == 4


@pytest.mark.parametrize("G,total", [(UNKNOT2, 2), (UNKNOT3, 4), (TREFOIL5, 48), (TREFOIL5_MIRROR, 48)])
def test_homology_totals(G, total):
    assert sum(homology_dims(G).values()) == total


def test_filtered_differential_is_smaller():
    # allowing X's in rectangles collapses onto HFK-hat of the unknot tensor V^(n-1)
    assert sum(homology_dims(TREFOIL5, filtered=True).values()) == 16


def test_homology_dimension_divisibility():
    rng = random.Random(5)
    for _ in range(12):
        G = random_knot(rng, rng.randint(3, 6))
        total = sum(homology_dims(G).values())
        assert total % 2 ** (G.n - 1) == 0


def test_rotation_preserves_homology():
    rng = random.Random(6)
    for _ in range(6):
        G = random_knot(rng, rng.randint(3, 6))
        h = homology_dims(G)
        for d in "LRUD":
            assert homology_dims(rotate(G, d)) == h


def test_membership_empty_target():
    assert membership(TREFOIL5, [])


def test_membership_rejects_mixed_gradings():
    s = sorted(kernels.grading_histogram(TREFOIL5.o0))
    a = enumerate_states(TREFOIL5, s[0]).states[0]
    b = enumerate_states(TREFOIL5, s[-1]).states[0]
    with pytest.raises(ValueError):
        membership(TREFOIL5, [a, b])


def test_theta_not_a_boundary_on_unknot():
    for sign in ("plus", "minus"):
        assert not membership(UNKNOT2, seed_chain(UNKNOT2, sign))


def test_limits():
    big = GridDiagram(tuple(range(2, 12)) + (1,), tuple(range(1, 12)))
    with pytest.raises(OracleLimitError):
        enumerate_states(big, 0)
    with pytest.raises(OracleLimitError):
        membership(big, [big.x0])
    with pytest.raises(OracleLimitError):
        homology_dims(random_knot(random.Random(1), 7))
    assert BRUTE_FORCE_LIMIT >= 9


def test_oracle_agrees_with_nullity_small():
    rng = random.Random(8)
    for _ in range(30):
        G = random_knot(rng, rng.randint(3, 6))
        for sign in ("plus", "minus"):
            for refine in ("theta", "delta1"):
                seed = seed_chain(G, sign, refine)
                assert membership(G, seed) == is_null(G, seed).is_null, (G, sign, refine)


def test_oracle_spot_check_n10():
    from _support import corpus
    for name in ("m10_132_L1", "m10_132_L2"):
        G = corpus(name)
        assert G.n == 10
        for sign in ("plus", "minus"):
            for refine in ("theta", "delta1"):
                seed = seed_chain(G, sign, refine)
                assert membership(G, seed) == is_null(G, seed).is_null, (name, sign, refine)


@given(knot_and_state(2, 6))
@settings(max_examples=40)
def test_boundaries_are_boundaries(data):
    G, x = data
    assert membership(G, tilde_boundary(x, G))


@given(knots(3, 5))
@settings(max_examples=15)
def test_homology_divisible_property(G):
    assert sum(homology_dims(G).values()) % 2 ** (G.n - 1) == 0

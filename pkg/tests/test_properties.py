"""Randomized checks of the stated invariants, one property per test."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from _support import knot_and_state, knots
from gridtheta import kernels
from gridtheta.grid import (
    GridDiagram,
    alexander,
    classical_invariants,
    format_grid,
    grid_to_braid,
    maslov,
    parse_grid,
)
from gridtheta.invariant import delta1_seed, grading_check, seed_chain, theta_cycle
from gridtheta.moves import (
    STAB_TYPES,
    commutation_legal,
    commute,
    destabilize,
    random_transverse_move,
    stabilize,
)
from gridtheta.nullity import A0, ConeComplex, Mode, is_null
from gridtheta.oracle import homology_dims, membership
from gridtheta.rectangles import chain_boundary, rectangles, tilde_boundary, tilde_boundary_k
from gridtheta.report import Query, Report

small = settings(max_examples=60)


# -- grid diagrams -------------------------------------------------------------


@given(knots(2, 9))
def test_diagram_invariants(G):
    assert sorted(G.X) == sorted(G.O) == list(range(1, G.n + 1))
    assert all(x != o for x, o in zip(G.X, G.O))
    assert parse_grid(format_grid(G)) == G


@given(knot_and_state(2, 8))
def test_alexander_is_integer_and_identity(data):
    G, x = data
    n = G.n
    mo, mx = maslov(x, G, "O"), maslov(x, G, "X")
    a = Fraction(mo - mx, 2) - Fraction(n - 1, 2)
    assert a.denominator == 1
    assert alexander(x, G) == a
    assert mo - mx == 2 * alexander(x, G) + (n - 1)


@given(knots(2, 9))
def test_classical_identities(G):
    ci = classical_invariants(G)
    assert ci.tb == -ci.wr - ci.ne_total
    assert 2 * ci.r == ci.ne_x - ci.ne_o - ci.sw_x + ci.sw_o
    assert (ci.sl_plus, ci.sl_minus) == (ci.tb - ci.r, ci.tb + ci.r)
    assert ci.sl_plus % 2 == 1 and ci.sl_minus % 2 == 1


@given(knots(2, 9))
def test_braid_exponent_sum(G):
    b = grid_to_braid(G)
    assert b.exponent_sum - b.strands == classical_invariants(G).sl_plus
    assert all(0 < abs(g) < b.strands for g in b.word)
    assert b.closure_components() == 1


# -- rectangles -------------------------------------------------------------------


@given(knot_and_state(2, 8))
def test_boundary_squares_to_zero(data):
    G, x = data
    assert chain_boundary(tilde_boundary(x, G), G) == set()


@given(knot_and_state(3, 8))
def test_degree_one_commutes(data):
    G, x = data
    d0d1 = chain_boundary(tilde_boundary_k(x, G, 1), G, 0)
    d1d0 = chain_boundary(tilde_boundary_k(x, G, 0), G, 1)
    assert d0d1 == d1d0


@given(knot_and_state(2, 8), st.integers(0, 2))
def test_boundary_gradings(data, k):
    G, x = data
    m, a = maslov(x, G), alexander(x, G)
    for y in tilde_boundary_k(x, G, k):
        assert maslov(y, G) == m - 1
        assert alexander(y, G) == a - k


@given(knot_and_state(2, 7), st.data())
def test_rectangle_count_symmetric(data, d):
    G, x = data
    y = bytes(d.draw(st.permutations(range(G.n))))
    nx, ny = len(rectangles(x, y)), len(rectangles(y, x))
    assert nx == ny and nx in (0, 2)
    diff = sum(a != b for a, b in zip(x, y))
    assert (nx == 2) == (diff == 2)


# -- cycles and seeds ----------------------------------------------------------------


@given(knots(2, 9))
def test_cycles(G):
    assert theta_cycle(G, "minus") == G.x0
    for sign in ("plus", "minus"):
        assert tilde_boundary(theta_cycle(G, sign), G) == set()
        sl = classical_invariants(G).sl_plus if sign == "plus" else classical_invariants(G).sl_minus
        assert grading_check(G, sign) == (sl + 1, (sl + 1) // 2)
        assert chain_boundary(delta1_seed(G, sign), G) == set()


# -- nullity -----------------------------------------------------------------------------


@given(knots(3, 7), st.sampled_from(["plus", "minus"]), st.sampled_from(["theta", "delta1"]))
@small
def test_modes_and_oracle_agree(G, sign, refine):
    seed = seed_chain(G, sign, refine)
    staged = is_null(G, seed, Mode.STAGED, check_gradings=True)
    inter = is_null(G, seed, Mode.INTERLEAVED, check_gradings=True)
    fast = is_null(G, seed)
    assert staged.result is inter.result is fast.result
    assert staged.is_null == membership(G, seed)


@given(knots(3, 7), st.sampled_from(["plus", "minus"]))
@small
def test_verdict_deterministic(G, sign):
    seed = seed_chain(G, sign, "delta1") or seed_chain(G, sign)
    a, b = is_null(G, seed), is_null(G, seed)
    assert a.result is b.result and a.stats.states_visited == b.stats.states_visited


@given(st.lists(st.sets(st.integers(0, 7), max_size=4), max_size=8), st.sets(st.integers(0, 7)))
def test_cone_structure(cols, seed):
    c = ConeComplex([f"b{i}" for i in sorted(seed)])
    for j, col in enumerate(cols):
        c.add_generator(f"a{j}", [f"b{i}" for i in sorted(col)])
    while (e := c.eligible_edge()) is not None:
        c.contract_edge(*e)
        # bipartite and mod-2: inc mirrors out exactly, a0 never appears as a target
        for a, bs in c.out.items():
            assert all(a in c.inc[b] for b in bs)
            assert A0 not in bs
        for b, As in c.inc.items():
            assert all(b in c.out[a] for a in As)


# -- moves ---------------------------------------------------------------------------------


@given(knots(3, 7), st.integers(0, 2**20))
@settings(max_examples=25)
def test_transverse_invariance_of_verdict(G, seed):
    rng = random.Random(seed)
    before = is_null(G, seed_chain(G, "plus")).result
    sl = classical_invariants(G).sl_plus
    H = G
    for _ in range(rng.randint(1, 12)):
        _, H = random_transverse_move(H, rng, max_n=8)
        assert classical_invariants(H).sl_plus == sl
    assert is_null(H, seed_chain(H, "plus")).result is before


@given(knots(2, 8), st.sampled_from(STAB_TYPES), st.data())
def test_stabilize_destabilize_inverse(G, t, d):
    c = d.draw(st.integers(1, G.n))
    r = G.X[c - 1] if t[0] == "X" else G.O[c - 1]
    assert destabilize(stabilize(G, c, r, t), c, r) == G


@given(knots(3, 8), st.data())
def test_commutation_preserves_classical(G, d):
    legal = [(w, i) for w in ("columns", "rows") for i in range(1, G.n + 1) if commutation_legal(G, w, i)]
    if legal:
        w, i = d.draw(st.sampled_from(legal))
        a, b = classical_invariants(G), classical_invariants(commute(G, w, i))
        assert (a.tb, a.r) == (b.tb, b.r)
        if i < G.n:
            # across the cut the planar writhe may shift, like under rotation
            assert a.wr == b.wr


@given(knots(3, 5))
@settings(max_examples=12)
def test_homology_invariant_under_commutation(G):
    h = sum(homology_dims(G).values())
    for w in ("columns", "rows"):
        for i in range(1, G.n + 1):
            if commutation_legal(G, w, i):
                assert sum(homology_dims(commute(G, w, i)).values()) == h


# -- reports -----------------------------------------------------------------------------


verdicts = st.sampled_from(["Null", "NonNull", "Inconclusive"])
queries = st.builds(
    Query,
    sign=st.sampled_from(["plus", "minus"]),
    refine=st.sampled_from(["theta", "delta1"]),
    verdict=verdicts,
    stats=st.dictionaries(st.sampled_from(["states_visited", "layers_built"]), st.integers(0, 10**9)),
    seed_size=st.integers(0, 100),
    oracle=st.none() | verdicts,
    note=st.none() | st.text(max_size=20),
)


@given(knots(2, 8), st.lists(queries, max_size=4))
def test_report_json_roundtrip(G, qs):
    ci = classical_invariants(G)
    rep = Report(G.name, G.n, ci.tb, ci.r, ci.sl_plus, ci.sl_minus, "0.1.0", "interleaved",
                 {"plus": list(grading_check(G, "plus"))}, qs)
    assert Report.from_json(rep.to_json()) == rep
    assert Report.from_json(rep.to_json(indent=None)) == rep


@given(knot_and_state(2, 7))
def test_kernel_maslov_matches_definition(data):
    G, x = data
    assert kernels.maslov(x, G.o0) == maslov(x, G)

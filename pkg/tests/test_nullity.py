import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import CORPUS, UNKNOT2, corpus, knots, random_knot
from gridtheta import kernels
from gridtheta.grid import as_state
from gridtheta.invariant import seed_chain, theta_cycle
from gridtheta.nullity import (
    A0,
    ConeComplex,
    Mode,
    ResourceLimitExceeded,
    Result,
    SeedNotClosedError,
    build_next_layer,
    is_null,
    max_live_for_memory,
    parse_memory,
)
from gridtheta.oracle import rank_gf2
from gridtheta.rectangles import tilde_boundary

PRETZEL = corpus("pretzel433_L1")


def S(*t):
    return as_state(t)


X_LL = S(9, 8, 1, 4, 6, 5, 7, 2, 3)
TRACE = [
    ({S(9, 8, 1, 4, 5, 6, 7, 2, 3), S(8, 9, 1, 4, 6, 5, 7, 2, 3)},
     {S(9, 8, 1, 4, 5, 7, 6, 2, 3), S(8, 1, 9, 4, 6, 5, 7, 2, 3)}),
    ({S(8, 9, 1, 4, 5, 7, 6, 2, 3), S(8, 1, 9, 4, 5, 6, 7, 2, 3)},
     {S(8, 1, 9, 4, 5, 7, 6, 2, 3)}),
]

HAS_COMPILED = kernels.compiled_engine() is not None


@pytest.mark.parametrize("mode", list(Mode))
def test_pretzel_trace(mode):
    v = is_null(PRETZEL, [X_LL], mode, record_layers=True, check_gradings=True)
    assert v.result is Result.NONNULL
    assert v.stats.states_visited == 8
    assert v.layers[0] == (frozenset(), frozenset({X_LL}))
    assert [tuple(map(set, layer)) for layer in v.layers[1:]] == TRACE
    assert v.stats.layers_built == 2


def test_first_layer():
    new_A, new_B = build_next_layer({X_LL}, set(), PRETZEL)
    assert set(new_A) == TRACE[0][0]
    assert set(new_B) - {X_LL} == TRACE[0][1]
    for a, targets in new_A.items():
        assert set(targets) == set(tilde_boundary(a, PRETZEL))


def test_layer_after_B2_is_empty():
    new_A, _ = build_next_layer(TRACE[1][1], TRACE[1][0], PRETZEL)
    assert not new_A


def test_figure_contraction():
    a1, a2 = S(9, 8, 1, 4, 5, 6, 7, 2, 3), S(8, 9, 1, 4, 6, 5, 7, 2, 3)
    b1, b2 = S(9, 8, 1, 4, 5, 7, 6, 2, 3), S(8, 1, 9, 4, 6, 5, 7, 2, 3)
    c = ConeComplex([X_LL])
    c.add_generator(a1, [X_LL, b1])
    c.add_generator(a2, [X_LL, b2])
    c.contract_edge(a1, X_LL)
    assert c.out == {A0: {b1}, a2: {b1, b2}}
    assert c.inc == {b1: {A0, a2}, b2: {a2}}
    assert c.elimination_log == [(a1, X_LL)]


def test_isolated_contraction_is_deletion():
    c = ConeComplex(["s"])
    c.add_generator("a", ["b"])
    c.contract_edge("a", "b")
    assert c.out == {A0: {"s"}} and c.inc == {"s": {A0}}


def test_double_toggle_cancels():
    c = ConeComplex(["b"])
    c.add_generator("a", ["b", "c"])
    c.add_generator("a2", ["b", "c"])
    c.contract_edge("a", "b")
    # a0 picks up c; a2's edge to c cancels
    assert c.out == {A0: {"c"}, "a2": set()}


def test_three_edge_example():
    c = ConeComplex(["b"])
    c.add_generator("a", ["b", "b'"])
    assert c.eligible_edge() == ("a", "b")
    stats_result = c.contraction_loop()
    assert stats_result is Result.NONNULL
    assert c.out[A0] == {"b'"}


def test_contract_errors():
    c = ConeComplex(["b"])
    c.add_generator("a", ["b"])
    with pytest.raises(ValueError):
        c.contract_edge(A0, "b")
    with pytest.raises(ValueError):
        c.contract_edge("a", "zzz")
    with pytest.raises(ValueError):
        c.add_generator("a", [])


def test_empty_seed_is_null():
    for mode in Mode:
        assert is_null(PRETZEL, [], mode).result is Result.NULL
    assert ConeComplex([]).contraction_loop() is Result.NULL


def test_seed_must_be_closed():
    y = S(8, 9, 1, 4, 6, 5, 7, 2, 3)  # has boundary
    with pytest.raises(SeedNotClosedError):
        is_null(PRETZEL, [y])
    with pytest.raises(SeedNotClosedError):
        is_null(PRETZEL, [X_LL, theta_cycle(corpus("pretzel433_L1"), "plus"), y])


def test_resource_cap_is_loud():
    G = corpus("m12n200_L1")
    seed = seed_chain(G, "plus", "delta1")
    for engine in ("python",) + (("compiled",) if HAS_COMPILED else ()):
        with pytest.raises(ResourceLimitExceeded) as info:
            is_null(G, seed, max_live=1000, engine=engine)
        assert info.value.live > 1000 == info.value.cap
    with pytest.raises(ResourceLimitExceeded):
        is_null(G, seed, Mode.STAGED, max_live=1000)


@pytest.mark.parametrize("name,expected", [
    ("m10_132_L1", Result.NULL), ("m10_132_L2", Result.NONNULL),
    ("m12n200_L1", Result.NULL), ("m12n200_L2", Result.NONNULL),
])
def test_theta_plus_examples(name, expected):
    G = corpus(name)
    assert is_null(G, seed_chain(G, "plus")).result is expected


def _corpus_queries(max_n, refines):
    for name in CORPUS:
        G = corpus(name)
        if G.n > max_n:
            continue
        for sign in ("plus", "minus"):
            for refine in refines:
                yield name, G, sign, refine


def _modes_agree(name, G, sign, refine):
    seed = seed_chain(G, sign, refine)
    a = is_null(G, seed, Mode.STAGED)
    b = is_null(G, seed, Mode.INTERLEAVED, engine="python")
    assert a.result is b.result, (name, sign, refine)


def test_modes_agree_on_corpus():
    for q in _corpus_queries(11, ("theta",)):
        _modes_agree(*q)
    for q in _corpus_queries(9, ("delta1",)):
        _modes_agree(*q)


# staged closures for pretzel633_L2's delta1 seeds do not finish in minutes
# (interleaved settles them after a few thousand states), so they are left out
STAGED_TOO_LARGE = {"pretzel633_L2"}


@pytest.mark.slow
def test_modes_agree_on_corpus_large():
    for q in _corpus_queries(11, ("delta1",)):
        if q[1].n > 9 and q[0] not in STAGED_TOO_LARGE:
            _modes_agree(*q)
    for q in _corpus_queries(12, ("theta",)):
        if q[1].n == 12:
            _modes_agree(*q)


def test_modes_agree_on_random_small():
    rng = random.Random(11)
    for _ in range(60):
        G = random_knot(rng, rng.randint(3, 7))
        for sign in ("plus", "minus"):
            for refine in ("theta", "delta1"):
                seed = seed_chain(G, sign, refine)
                results = {
                    is_null(G, seed, Mode.STAGED).result,
                    is_null(G, seed, Mode.INTERLEAVED, engine="python").result,
                    is_null(G, seed, Mode.INTERLEAVED).result,
                }
                assert len(results) == 1


def test_interleaved_layers_equal_closure_layers():
    # only the previous A-layer is excluded in interleaved growth; the layers
    # still coincide with the full breadth-first closure
    rng = random.Random(12)
    for _ in range(25):
        G = random_knot(rng, rng.randint(4, 7))
        seed = seed_chain(G, "plus", "delta1") or seed_chain(G, "plus")
        s = is_null(G, seed, Mode.STAGED, record_layers=True)
        i = is_null(G, seed, Mode.INTERLEAVED, record_layers=True)
        # interleaved may stop early, so compare the common prefix
        k = min(len(s.layers), len(i.layers))
        assert s.layers[:k] == i.layers[:k]


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled engine not built")
def test_compiled_engine_mirrors_python_engine():
    for name in CORPUS:
        G = corpus(name)
        if G.n > 11:
            continue
        for sign in ("plus", "minus"):
            for refine in ("theta", "delta1"):
                seed = seed_chain(G, sign, refine)
                a = is_null(G, seed, engine="compiled")
                b = is_null(G, seed, engine="python")
                assert a.result is b.result
                for f in ("states_visited", "layers_built", "contractions_performed",
                          "peak_live_generators"):
                    assert getattr(a.stats, f) == getattr(b.stats, f), (name, sign, refine, f)


def test_engine_argument_validation():
    with pytest.raises(ValueError):
        is_null(PRETZEL, [X_LL], engine="gpu")
    if HAS_COMPILED:
        with pytest.raises(ValueError):
            is_null(PRETZEL, [X_LL], engine="compiled", record_layers=True)


def test_verdict_deterministic():
    G = corpus("pretzel633_L2")
    seed = seed_chain(G, "minus", "delta1")
    a, b = is_null(G, seed), is_null(G, seed)
    assert a.result is b.result and a.stats.states_visited == b.stats.states_visited


def test_unknot2_cycles_nonnull():
    for sign in ("plus", "minus"):
        assert is_null(UNKNOT2, seed_chain(UNKNOT2, sign)).result is Result.NONNULL


def test_memory_parsing():
    assert parse_memory("16G") == 16 << 30
    assert parse_memory("512M") == 512 << 20
    assert parse_memory("1024") == 1024
    assert parse_memory("2GB") == 2 << 30
    with pytest.raises(ValueError):
        parse_memory("lots")
    assert max_live_for_memory(16 << 30, "compiled") > max_live_for_memory(16 << 30, "python")


# -- contraction soundness on random abstract complexes ---------------------------


@st.composite
def abstract_complexes(draw):
    na = draw(st.integers(0, 7))
    nb = draw(st.integers(1, 7))
    cols = [draw(st.sets(st.integers(0, nb - 1), min_size=1, max_size=nb)) for _ in range(na)]
    seed = draw(st.sets(st.integers(0, nb - 1), min_size=1, max_size=nb))
    order_seed = draw(st.integers(0, 10**6))
    return cols, seed, order_seed


def _in_span(cols, seed):
    vec = lambda s: sum(1 << i for i in s)  # noqa: E731
    r = rank_gf2(vec(c) for c in cols)
    return rank_gf2([vec(c) for c in cols] + [vec(seed)]) == r


@given(abstract_complexes())
@settings(max_examples=200)
def test_random_contraction_order_is_sound(data):
    cols, seed, order_seed = data
    rng = random.Random(order_seed)
    c = ConeComplex([f"b{i}" for i in seed])
    for j, col in enumerate(cols):
        c.add_generator(f"a{j}", [f"b{i}" for i in col])
    while True:
        edges = [(a, b) for a, bs in c.out.items() if a != A0 for b in bs]
        if not edges:
            break
        c.contract_edge(*rng.choice(sorted(edges)))
    assert (not c.out[A0]) == _in_span(cols, seed)


@given(abstract_complexes())
@settings(max_examples=200)
def test_contraction_loop_is_sound(data):
    cols, seed, _ = data
    c = ConeComplex([f"b{i}" for i in seed])
    for j, col in enumerate(cols):
        c.add_generator(f"a{j}", [f"b{i}" for i in col])
    assert (c.contraction_loop() is Result.NULL) == _in_span(cols, seed)


@given(knots(3, 6))
def test_modes_agree_property(G):
    for sign in ("plus", "minus"):
        seed = seed_chain(G, sign)
        assert is_null(G, seed, Mode.STAGED).result is is_null(G, seed, Mode.INTERLEAVED).result

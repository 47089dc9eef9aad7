import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from flipwidth.errors import Graph6Error, OrderCapError
from flipwidth.graph import (
    INF,
    Graph,
    ball,
    complement,
    complete,
    component,
    cycle,
    edgeless,
    emit_graph6,
    enumerate_graphs,
    induced_subgraph,
    isomorphic,
    mask_of,
    parse_graph6,
    parse_radius,
    path,
    relabel,
)
from flipwidth.obstructions import ObstructionKind


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


def test_graph6_small_examples():
    assert parse_graph6("@") == Graph(1, (0,))
    assert emit_graph6(Graph(1, (0,))) == "@"
    assert parse_graph6("D~{") == complete(5)
    assert emit_graph6(complete(5)) == "D~{"
    c5 = parse_graph6("Dhc")
    assert set(c5.edges()) == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}


@pytest.mark.parametrize("g", [complete(5), cycle(5), path(7), edgeless(3), cycle(9)])
def test_graph6_matches_hand_packing(g):
    n, edges = oracles.edge_set(g)
    assert emit_graph6(g) == oracles.graph6_by_hand(n, edges)


def test_graph6_header_tolerated():
    assert parse_graph6(">>graph6<<Dhc") == cycle(5)
    assert parse_graph6("Dhc\n") == cycle(5)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("D~{x", 0),  # too many data bytes
        ("D~", 0),
        ("D~z", 2),  # padding bits set
        ("D\x07{", 1),
        ("~", 0),  # long size form
        (">>graph6<<D~ ", 12),
    ],
)
def test_graph6_errors_name_offset(text, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(text)
    assert info.value.offset == offset
    assert f"byte offset {offset}" in str(info.value)


def test_emit_refuses_long_form(monkeypatch):
    monkeypatch.setenv("FLIPWIDTH_MAX_N", "70")
    with pytest.raises(Graph6Error):
        emit_graph6(edgeless(63))


def test_order_cap(monkeypatch):
    with pytest.raises(OrderCapError):
        edgeless(17)
    monkeypatch.setenv("FLIPWIDTH_MAX_N", "20")
    assert edgeless(17).n == 17


def test_graph_rejects_asymmetric_and_loops():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(1, (1,))


@given(graphs(max_n=10))
def test_graph6_round_trip(g):
    assert parse_graph6(emit_graph6(g)) == g
    s = emit_graph6(g)
    assert emit_graph6(parse_graph6(s)) == s


def test_complement_examples():
    assert complement(complete(5)) == edgeless(5)
    assert isomorphic(complement(cycle(5)), cycle(5)) is not None
    gem, cogem = ObstructionKind.GEM.graph, ObstructionKind.COGEM.graph
    assert isomorphic(complement(gem), cogem) is not None


@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g
    h = complement(g)
    for u, v in itertools.combinations(range(g.n), 2):
        assert h.has_edge(u, v) != g.has_edge(u, v)


def test_induced_subgraph_examples():
    gem = ObstructionKind.GEM.graph
    sub, verts = induced_subgraph(gem, mask_of(range(4)))
    assert sub == path(4) and verts == (0, 1, 2, 3)
    sub, _ = induced_subgraph(cycle(5), mask_of([0, 1, 2, 3]))
    assert isomorphic(sub, path(4)) is not None
    g = cycle(6)
    assert induced_subgraph(g, g.vertex_mask) == (g, tuple(range(6)))


def test_induced_subgraph_relabels_in_order():
    g = cycle(6)
    sub, verts = induced_subgraph(g, mask_of([1, 2, 5, 0]))
    assert verts == (0, 1, 2, 5)
    assert set(sub.edges()) == {(0, 1), (1, 2), (0, 3)}


def test_ball_examples():
    for v in range(5):
        assert ball(cycle(5), v, 1) == mask_of([v, (v + 1) % 5, (v - 1) % 5])
    assert ball(ObstructionKind.COGEM.graph, 4, INF) == 1 << 4
    g = path(5)
    assert ball(g, 0, 4) == ball(g, 0, INF) == g.vertex_mask


@given(graphs(), st.data())
def test_ball_monotone_in_radius(g, data):
    if g.n == 0:
        return
    v = data.draw(st.integers(0, g.n - 1))
    prev = 1 << v
    assert ball(g, v, 1) & prev
    for r in range(1, g.n + 1):
        cur = ball(g, v, r)
        assert prev & ~cur == 0
        prev = cur
    assert prev == ball(g, v, INF) == component(g, v)


def test_isomorphic_examples():
    c5 = cycle(5)
    rev = relabel(c5, [4, 3, 2, 1, 0])
    perm = isomorphic(c5, rev)
    assert perm is not None and relabel(c5, perm) == rev
    bull = ObstructionKind.BULL.graph
    assert isomorphic(bull, complement(bull)) is not None
    assert isomorphic(ObstructionKind.GEM.graph, bull) is None
    assert isomorphic(edgeless(3), edgeless(4)) is None


def test_isomorphic_is_lex_least():
    # every rotation and reflection of C5 onto itself is a witness; identity is least
    assert isomorphic(cycle(5), cycle(5)) == (0, 1, 2, 3, 4)


def test_isomorphism_equivalence():
    rng = random.Random(7)
    for n in range(6):
        for g in enumerate_graphs(n):
            assert isomorphic(g, g) is not None
    for _ in range(1000):
        n = rng.randint(1, 7)
        g = Graph.from_edges(n, [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.5])
        if rng.random() < 0.5:
            perm = list(range(n))
            rng.shuffle(perm)
            h = relabel(g, perm)
        else:
            h = Graph.from_edges(n, [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.5])
        assert (isomorphic(g, h) is None) == (isomorphic(h, g) is None)
        if isomorphic(g, h) is not None:
            assert relabel(g, isomorphic(g, h)) == h


def test_enumerate_labeled_counts():
    assert len(list(enumerate_graphs(3, dedupe=False))) == 8
    assert len(list(enumerate_graphs(4, dedupe=False))) == 64


def test_class_counts_small_by_brute_force():
    assert len(list(enumerate_graphs(3))) == 4
    assert len(list(enumerate_graphs(5))) == oracles.count_classes(5) == 34


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_class_counts_match_burnside(n):
    reps = list(enumerate_graphs(n))
    assert len(reps) == oracles.burnside_class_count(n)


def test_class_representatives_pairwise_distinct():
    reps = list(enumerate_graphs(6))
    forms = {oracles.canonical_form(*oracles.edge_set(g)) for g in reps}
    assert len(forms) == len(reps) == 156


def test_enumeration_is_deterministic():
    assert [emit_graph6(g) for g in enumerate_graphs(5)] == [emit_graph6(g) for g in enumerate_graphs(5)]


def test_enumeration_cap():
    with pytest.raises(OrderCapError):
        list(enumerate_graphs(8))


def test_parse_radius():
    assert parse_radius("inf") == INF
    assert parse_radius("3") == 3
    for bad in ("0", "-1", "x"):
        with pytest.raises(ValueError):
            parse_radius(bad)

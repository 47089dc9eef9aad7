import pytest

import oracles
from flipwidth.errors import BudgetExceeded, WidthViolation
from flipwidth.flips import FlipSpec, enumerate_kflips
from flipwidth.game import (
    TableStrategy,
    build_arena,
    evasive_move,
    flip_width,
    solve,
    verify_strategy,
)
from flipwidth.graph import (
    INF,
    Graph,
    ball,
    bits,
    complete,
    cycle,
    disjoint_union,
    edgeless,
    enumerate_graphs,
    path,
)
from flipwidth.obstructions import KINDS, ObstructionKind

C5 = ObstructionKind.C5.graph
GEM = ObstructionKind.GEM.graph


class Constant:
    def __init__(self, spec):
        self.spec = spec

    def reset(self):
        return 0

    def step(self, state, runner):
        return self.spec, 0


def test_triangle_caught_by_complement():
    v = solve(complete(3), 1, 2)
    assert v.flipper_wins
    assert all(v.ranks[(0, u)] == 1 for u in range(3))


def test_c5_width_two_radius_two_loses():
    v = solve(C5, 2, 2)
    assert not v.flipper_wins
    assert v.safe_region and not v.strategy.keys() >= {(0, u) for u in range(5)}


def test_p4_width_two_unbounded_radius_wins():
    assert solve(path(4), 2, INF).flipper_wins


def test_c5_width_three_matches_minimax():
    n, edges = oracles.edge_set(C5)
    assert solve(C5, 3, 2).flipper_wins == oracles.minimax_flipper_wins(n, edges, 3, 2)


def test_capture_only_from_round_one():
    # vertex 0 isolated in G itself: still needs one announced flip
    g = disjoint_union(edgeless(1), complete(2))
    v = solve(g, 1, 1)
    assert v.ranks[(0, 0)] == 1


@pytest.mark.parametrize("r", [1, 2, 3, INF])
def test_flip_width_one_for_trivial_graphs(r):
    for n in range(1, 7):
        assert flip_width(complete(n), r) == 1
        assert flip_width(edgeless(n), r) == 1


def test_flip_width_gem_radius_two():
    value = flip_width(GEM, 2)
    assert value >= 3
    n, edges = oracles.edge_set(GEM)
    assert value == oracles.minimax_flip_width(n, edges, 2)


def test_flip_width_c6():
    assert flip_width(cycle(6), INF) == 2


def test_table_strategy_verifies():
    verdict = solve(cycle(6), 2, INF)
    result = verify_strategy(cycle(6), INF, TableStrategy(verdict))
    assert result.ok and result.max_rounds >= 1


def test_table_strategy_needs_a_win():
    with pytest.raises(ValueError):
        TableStrategy(solve(C5, 2, 2))


def _isolate_everything(g):
    return FlipSpec.make([1 << v for v in range(g.n)], g.edges())


@pytest.mark.parametrize("g", [edgeless(5), C5, complete(4)])
def test_singleton_partition_catches_in_one_round(g):
    res = verify_strategy(g, INF, Constant(_isolate_everything(g)), width=g.n)
    assert res.ok and res.max_rounds == 1


def test_width_violation():
    with pytest.raises(WidthViolation):
        verify_strategy(C5, INF, Constant(_isolate_everything(C5)), width=2)


def test_verifier_reports_cycle_trace():
    res = verify_strategy(path(3), 1, Constant(FlipSpec.identity(3)))
    assert not res.ok
    assert res.trace and res.trace[-1] in res.trace[:-1]


def _strategy_plays(verdict):
    """Every (state, successor) pair reachable when the flipper follows its table."""
    arena = verdict.arena
    graphs = arena.graphs
    n = verdict.graph.n
    todo = [(0, v) for v in range(n)]
    seen = set(todo)
    while todo:
        s = todo.pop()
        f = verdict.strategy[s]
        for u in bits(ball(graphs[s[0]], s[1], arena.radius)):
            if graphs[f].rows[u]:
                t = (f, u)
                yield s, t
                if t not in seen:
                    seen.add(t)
                    todo.append(t)


@pytest.mark.parametrize("r", [1, 2, INF])
def test_rank_descent(r):
    for g in enumerate_graphs(5):
        verdict = solve(g, 2, r)
        if not verdict.flipper_wins:
            continue
        for s, t in _strategy_plays(verdict):
            assert verdict.ranks[t] < verdict.ranks[s]


@pytest.mark.parametrize("kind", KINDS)
def test_safe_region_closure(kind):
    verdict = solve(kind.graph, 2, 2)
    graphs = verdict.arena.graphs
    assert verdict.safe_region
    for f, v in verdict.safe_region:
        reach = ball(graphs[f], v, 2)
        for f2, h in enumerate(graphs):
            assert any(h.rows[u] and (f2, u) in verdict.safe_region for u in bits(reach))


def test_evasive_move_stays_safe():
    verdict = solve(C5, 2, 2)
    for f, v in verdict.safe_region:
        for f2 in range(len(verdict.arena.flips)):
            u = evasive_move(verdict, f, v, f2)
            assert (f2, u) in verdict.safe_region


def test_state_budget_refusal():
    with pytest.raises(BudgetExceeded):
        build_arena(cycle(6), 2, INF, state_budget=10)


def test_arena_starts_with_base():
    arena = build_arena(C5, 2, 2)
    assert arena.graphs[0] == C5
    assert [h for _, h in enumerate_kflips(C5, 2)] == arena.graphs


def test_solver_is_deterministic():
    a = solve(cycle(6), 2, INF)
    b = solve(cycle(6), 2, INF)
    assert a.ranks == b.ranks and a.strategy == b.strategy


def test_trivial_orders():
    assert solve(Graph(0, ()), 1, 1).flipper_wins
    assert flip_width(Graph(1, (0,)), INF) == 1

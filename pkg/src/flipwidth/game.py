"""Exact solver for the flipper game and a strategy verifier.

Game states are ``(f, v)``: ``f`` indexes the most recently announced graph
in the arena's flip list (index 0 is the base graph itself) and ``v`` is the
runner's vertex.  The flipper's winning region is the least fixpoint

    W_{j+1} = {(H, v) : some flip H' has every u in ball(H, v, r)
               isolated in H' or (H', u) in W_j}

which only depends on ``ball(H, v, r)``.  So each round marks every vertex
set covered by some ``isolated(H') | W_j(H')`` (a superset closure over all
``2^n`` masks) and looks the balls up in that table.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Hashable, Protocol

import numpy as np

from .errors import BudgetExceeded, WidthViolation
from .flips import DEFAULT_FLIP_BUDGET, FlipSpec, apply_flip, enumerate_kflips
from .graph import Graph, Radius, ball, bits, emit_graph6

log = logging.getLogger(__name__)

DEFAULT_STATE_BUDGET = 1_000_000

State = tuple[int, int]


@dataclass
class Arena:
    base: Graph
    flips: list[tuple[FlipSpec, Graph]]
    radius: Radius
    width: int

    @property
    def graphs(self) -> list[Graph]:
        return [h for _, h in self.flips]


@dataclass
class GameVerdict:
    arena: Arena
    flipper_wins: bool
    ranks: dict[State, int] = field(default_factory=dict)
    strategy: dict[State, int] = field(default_factory=dict)
    safe_region: frozenset[State] = frozenset()

    @property
    def graph(self) -> Graph:
        return self.arena.base

    def spec_for(self, state: State) -> FlipSpec:
        return self.arena.flips[self.strategy[state]][0]


def build_arena(
    g: Graph,
    k: int,
    r: Radius,
    flip_budget: int = DEFAULT_FLIP_BUDGET,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> Arena:
    flips = enumerate_kflips(g, k, flip_budget)
    if len(flips) * g.n > state_budget:
        raise BudgetExceeded(len(flips) * g.n, state_budget, "game states")
    return Arena(g, flips, r, k)


def _superset_closure(marks: np.ndarray, n: int) -> np.ndarray:
    """``out[m]`` is true iff ``marks[m']`` for some superset ``m'`` of ``m``."""
    out = marks.copy()
    for b in range(n):
        view = out.reshape(-1, 2, 1 << b)
        view[:, 0, :] |= view[:, 1, :]
    return out


def solve(
    g: Graph,
    k: int,
    r: Radius,
    flip_budget: int = DEFAULT_FLIP_BUDGET,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> GameVerdict:
    """Decide the flipper game of width ``k`` and radius ``r`` on ``g``."""
    arena = build_arena(g, k, r, flip_budget, state_budget)
    n = g.n
    graphs = arena.graphs
    nf = len(graphs)
    if n == 0:
        return GameVerdict(arena, True)

    iso = np.array([h.isolated() for h in graphs], dtype=np.int64)
    balls = np.array([[ball(h, v, r) for v in range(n)] for h in graphs], dtype=np.int64)
    rank = np.zeros((nf, n), dtype=np.int64)  # 0 = not (yet) in the winning region
    choice = np.full((nf, n), -1, dtype=np.int64)
    won = np.zeros(nf, dtype=np.int64)  # per flip, bitmask of winning runner vertices
    vbits = np.int64(1) << np.arange(n, dtype=np.int64)

    j = 0
    while True:
        allowed = iso | won
        marks = np.zeros(1 << n, dtype=bool)
        marks[allowed] = True
        covered = _superset_closure(marks, n)
        new = covered[balls] & (rank == 0)
        if not new.any():
            break
        j += 1
        rank[new] = j
        for b in np.unique(balls[new]):
            witness = int(np.flatnonzero((b & ~allowed) == 0)[0])
            choice[new & (balls == b)] = witness
        won |= np.bitwise_or.reduce(np.where(new, vbits, 0), axis=1)
    log.debug("solve: n=%d k=%d r=%s flips=%d rounds=%d", n, k, r, nf, j)

    wins = bool((rank[0] > 0).all())
    states = [(f, v) for f in range(nf) for v in range(n)]
    verdict = GameVerdict(arena, wins)
    verdict.ranks = {s: int(rank[s]) for s in states if rank[s]}
    verdict.strategy = {s: int(choice[s]) for s in states if rank[s]}
    verdict.safe_region = frozenset(s for s in states if not rank[s])
    return verdict


def flip_width(g: Graph, r: Radius, **budgets) -> int:
    """Least ``k`` for which the flipper wins.

    With ``k = n`` the flipper announces the edgeless graph and wins at once,
    so the search stops there without solving.
    """
    if g.n <= 1:
        return 1
    for k in range(1, g.n):
        if solve(g, k, r, **budgets).flipper_wins:
            return k
    return g.n


# --------------------------------------------------------------- verification

class FlipperStrategy(Protocol):
    """A deterministic reactive flipper with finite, hashable internal state."""

    def reset(self) -> Hashable: ...

    def step(self, state: Hashable, runner: int) -> tuple[FlipSpec, Hashable]: ...


class TableStrategy:
    """Positional strategy read off a winning :class:`GameVerdict`.

    The internal state is the index of the last announced flip.
    """

    def __init__(self, verdict: GameVerdict):
        if not verdict.flipper_wins:
            raise ValueError("the flipper does not win this game; no strategy table")
        self.verdict = verdict

    def reset(self) -> int:
        return 0

    def step(self, state: int, runner: int) -> tuple[FlipSpec, int]:
        f = self.verdict.strategy[(state, runner)]
        return self.verdict.arena.flips[f][0], f


@dataclass
class Verification:
    ok: bool
    max_rounds: int | None = None
    configurations: int = 0
    trace: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_strategy(
    g: Graph, r: Radius, strat: FlipperStrategy, width: int = 2
) -> Verification:
    """Check that ``strat`` catches every runner on ``g`` at radius ``r``.

    Explores every runner behaviour from every start vertex.  A configuration
    is ``(strategy state, last announced graph, runner vertex)``; since the
    strategy is deterministic, the flipper wins iff no configuration repeats
    along a play.  ``max_rounds`` is the length of the longest play.
    """
    graphs: dict[tuple[int, ...], Graph] = {g.rows: g}
    depth: dict[tuple, int] = {}
    on_stack: dict[tuple, int] = {}

    def children(config):
        s, rows, v = config
        spec, s2 = strat.step(s, v)
        if spec.width > width:
            raise WidthViolation(f"strategy announced {spec} with {spec.width} parts > {width}")
        h = apply_flip(g, spec)
        graphs.setdefault(h.rows, h)
        moves = ball(graphs[rows], v, r)
        return [(s2, h.rows, u) for u in bits(moves) if h.rows[u]]

    def describe(config) -> dict:
        s, rows, v = config
        return {"state": repr(s), "graph6": emit_graph6(graphs[rows]), "runner": v}

    s0 = strat.reset()
    worst = 0
    for v0 in range(g.n):
        root = (s0, g.rows, v0)
        if root in depth:
            worst = max(worst, depth[root])
            continue
        stack = [(root, iter(children(root)), 0)]
        on_stack[root] = 0
        while stack:
            config, it, best = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                del on_stack[config]
                depth[config] = best + 1
                if stack:
                    pc, pit, pbest = stack[-1]
                    stack[-1] = (pc, pit, max(pbest, best + 1))
                continue
            if nxt in on_stack:
                cycle = [c for c, _, _ in stack[on_stack[nxt]:]] + [nxt]
                prefix = [c for c, _, _ in stack[:on_stack[nxt]]]
                trace = [describe(c) for c in prefix + cycle]
                return Verification(False, None, len(depth) + len(on_stack), trace)
            if nxt in depth:
                stack[-1] = (config, it, max(best, depth[nxt]))
                continue
            on_stack[nxt] = len(stack)
            stack.append((nxt, iter(children(nxt)), 0))
        worst = max(worst, depth[root])
    return Verification(True, worst, len(depth))


# ------------------------------------------------------------ machine players

def evasive_move(verdict: GameVerdict, last: int, runner: int, announced: int) -> int | None:
    """Runner reply to ``announced`` after ``last``: stay in the safe region if possible.

    Returns ``None`` when every legal move is caught.  Otherwise prefers a
    safe state, then the state of highest rank (the longest resistance).
    """
    graphs = verdict.arena.graphs
    h = graphs[announced]
    moves = [u for u in bits(ball(graphs[last], runner, verdict.arena.radius)) if h.rows[u]]
    if not moves:
        return None
    safe = [u for u in moves if (announced, u) in verdict.safe_region]
    if safe:
        return safe[0]
    return max(moves, key=lambda u: (verdict.ranks.get((announced, u), 0), -u))


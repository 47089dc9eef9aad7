"""Constructive width-2 flipper strategies.

* :func:`eliminate_cross_edges` turns a triple of bi-joins into a 2-flip with
  no edges between the three sets.
* :func:`synthesize_strategy` compiles the bi-join decomposition of an
  obstruction-free graph into a reactive strategy that works at any radius.
* :func:`scripted_radius1` gives the short branching scripts for the gem and
  co-gem at radius 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from .bijoin import (
    COMPLETE,
    BiJoinWitness,
    DecompTree,
    build_decomposition,
    check_bijoin,
    is_anticomplete_to,
    is_complete_to,
)
from .errors import ConsistencyError, InvalidTriple, NotDecomposable
from .flips import FlipSpec, apply_flip
from .graph import Graph, bits, complement, format_set, isomorphic
from .obstructions import ObstructionKind, is_obstruction_free


# ---------------------------------------------------------------- triples

@dataclass(frozen=True)
class TripleOfBiJoins:
    """Partition ``(A, B, C)`` of ``V(G)`` with each set split off by a bi-join.

    ``halves[i]`` is the ``(W1, V1 - W1)`` split of member ``i`` from its
    witness; empty members get ``(0, 0)``.
    """

    a: int
    b: int
    c: int
    halves: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

    @property
    def members(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c


def make_triple(g: Graph, a: int, b: int, c: int) -> TripleOfBiJoins:
    if a & b or a & c or b & c or a | b | c != g.vertex_mask:
        raise InvalidTriple("sets do not partition the vertex set")
    halves = []
    for m in (a, b, c):
        if not m:
            halves.append((0, 0))
            continue
        if m == g.vertex_mask:
            halves.append((m, 0))
            continue
        wit: BiJoinWitness | None = check_bijoin(g, m)
        if wit is None:
            raise InvalidTriple(f"{format_set(m)} is not split off by a bi-join")
        halves.append((wit.w1, m & ~wit.w1))
    return TripleOfBiJoins(a, b, c, tuple(halves))


def _aligned(g: Graph, p1: int, p2: int, q1: int, q2: int) -> bool:
    return (
        is_complete_to(g, p1, q1)
        and is_anticomplete_to(g, p1, q2)
        and is_complete_to(g, p2, q2)
        and is_anticomplete_to(g, p2, q1)
    )


def cross_edges(g: Graph, members) -> int:
    """Number of edges of ``g`` joining two different sets of ``members``."""
    count = 0
    for i, m in enumerate(members):
        rest = 0
        for other in members[i + 1:]:
            rest |= other
        count += sum((g.rows[u] & rest).bit_count() for u in bits(m))
    return count


def cross_edge_flip(g: Graph, t: TripleOfBiJoins) -> tuple[FlipSpec, int]:
    """The 2-flip clearing all cross edges of ``t`` and which case produced it (1 or 2)."""
    (a1, a2), (b1, b2), (c1, c2) = t.halves
    for bb1, bb2 in ((b1, b2), (b2, b1)):
        for cc1, cc2 in ((c1, c2), (c2, c1)):
            if not (_aligned(g, a1, a2, bb1, bb2) and _aligned(g, a1, a2, cc1, cc2)):
                continue
            if _aligned(g, bb1, bb2, cc1, cc2):
                x = a1 | bb1 | cc1
                spec, case = FlipSpec.make([x, g.vertex_mask ^ x], [(0, 0), (1, 1)]), 1
            elif _aligned(g, bb1, bb2, cc2, cc1):
                x = a1 | bb2 | cc2
                spec, case = FlipSpec.make([x, g.vertex_mask ^ x], [(0, 1)]), 2
            else:
                continue
            if cross_edges(apply_flip(g, spec), t.members) == 0:
                return spec, case
    raise InvalidTriple(
        "no orientation clears the cross edges of "
        + " | ".join(format_set(m) for m in t.members)
    )


def eliminate_cross_edges(g: Graph, t: TripleOfBiJoins) -> FlipSpec:
    return cross_edge_flip(g, t)[0]


# ------------------------------------------------------------- synthesis

START = "start"


@dataclass
class Phase:
    node: int
    index: int  # 1-based
    triple: TripleOfBiJoins
    spec: FlipSpec
    case: int


@dataclass
class SynthesizedStrategy:
    """Reactive strategy compiled from a complete bi-join decomposition.

    States are ``"start"`` or ``(t, i)``: the phase-``i`` flip of tree node
    ``t`` was the last announcement.  After it the runner is either in
    ``X[t_i]`` (descend there) or further right among the children.
    """

    graph: Graph
    tree: DecompTree | None
    root: int | None
    children: dict[int, list[int]] = field(default_factory=dict)
    below: dict[int, int] = field(default_factory=dict)  # X_t
    phases: dict[tuple[int, int], Phase] = field(default_factory=dict)
    direct: FlipSpec | None = None

    def reset(self) -> Hashable:
        return START

    def step(self, state, runner: int) -> tuple[FlipSpec, Hashable]:
        if self.direct is not None:
            return self.direct, START
        if state == START:
            return self._enter(self.root, runner, state)
        t, i = state
        kids = self.children[t]
        if self.below[kids[i - 1]] >> runner & 1:
            return self._enter(kids[i - 1], runner, state)
        if i == len(kids) - 1:
            if not self.below[kids[-1]] >> runner & 1:
                raise ConsistencyError(f"runner {runner} escaped node {t} after phase {i}")
            return self._enter(kids[-1], runner, state)
        if not any(self.below[k] >> runner & 1 for k in kids[i:]):
            raise ConsistencyError(f"runner {runner} escaped node {t} after phase {i}")
        return self.phases[(t, i + 1)].spec, (t, i + 1)

    def _enter(self, t: int, runner: int, state) -> tuple[FlipSpec, Hashable]:
        while not self.tree.is_leaf(t) and len(self.children[t]) == 1:
            t = self.children[t][0]
        if self.tree.is_leaf(t):
            # runner sits on an isolated vertex of the last announcement; repeat it
            last = FlipSpec.identity(self.graph.n) if state == START else self.phases[state].spec
            return last, state
        return self.phases[(t, 1)].spec, (t, 1)

    @property
    def triples(self) -> list[Phase]:
        return [self.phases[key] for key in sorted(self.phases)]


def synthesize_strategy(g: Graph) -> SynthesizedStrategy:
    """Compile the width-2 strategy for an obstruction-free graph."""
    free, witness = is_obstruction_free(g)
    if not free:
        kind, emb = witness
        raise NotDecomposable(f"graph contains an induced {kind.value} at {emb}", witness)
    n = g.n
    if n <= 2:
        spec = FlipSpec.make([1 << v for v in range(n)], [(u, v) for u, v in g.edges()])
        return SynthesizedStrategy(g, None, None, direct=spec)

    tree = build_decomposition(g)
    if not tree.all_complete():
        raise NotDecomposable("decomposition has a prime node")
    root = tree.internal_nodes[0]
    strat = SynthesizedStrategy(g, tree, root)

    parent = {root: None}
    order = [root]
    for t in order:
        kids = [u for u in tree.neighbors(t) if u != parent[t]]
        strat.children[t] = kids
        for u in kids:
            parent[u] = t
            order.append(u)
    for t in reversed(order):
        strat.below[t] = (1 << t) if tree.is_leaf(t) else 0
        for u in strat.children[t]:
            strat.below[t] |= strat.below[u]

    full = g.vertex_mask
    for t in order:
        kids = strat.children[t]
        if tree.is_leaf(t) or len(kids) < 2:
            continue
        assert tree.labels[t] == COMPLETE
        xs = [strat.below[u] for u in kids]
        for i in range(1, len(kids)):
            left = full & ~strat.below[t]
            for x in xs[: i - 1]:
                left |= x
            right = 0
            for x in xs[i:]:
                right |= x
            triple = make_triple(g, left, xs[i - 1], right)
            spec, case = cross_edge_flip(g, triple)
            h = apply_flip(g, spec)
            _assert_separated(h, right, f"phase {i} at node {t}: remaining children")
            _assert_separated(h, xs[i - 1], f"phase {i} at node {t}: child {kids[i - 1]}")
            if i == len(kids) - 1:
                _assert_separated(h, xs[-1], f"phase {i} at node {t}: last child")
            strat.phases[(t, i)] = Phase(t, i, triple, spec, case)
    return strat


def _assert_separated(h: Graph, s: int, where: str) -> None:
    if any(h.rows[u] & ~s for u in bits(s)):
        raise ConsistencyError(f"{where}: edges leave {format_set(s)}")


# --------------------------------------------------------- radius-1 scripts

@dataclass
class ScriptedStrategy:
    """A finite branching script.

    ``program[state]`` lists ``(condition, spec, next_state)``; the first
    branch whose condition mask contains the observed runner (``None``
    matches anything) is taken.
    """

    graph: Graph
    program: dict[Hashable, list[tuple[int | None, FlipSpec, Hashable]]]

    def reset(self) -> Hashable:
        return START

    def step(self, state, runner: int) -> tuple[FlipSpec, Hashable]:
        for cond, spec, nxt in self.program[state]:
            if cond is None or cond >> runner & 1:
                return spec, nxt
        raise ConsistencyError(f"script has no branch for runner {runner} in state {state!r}")

    @property
    def rounds(self) -> int:
        return len({s for s in self.program if s != START})


# co-gem vertex names in the canonical labeling: path a-b-c-d, w isolated
_A, _B, _C, _D, _W = (1 << v for v in range(5))


def _two(x: int, y: int, pairs) -> FlipSpec:
    return FlipSpec.make([x, y], pairs)


def _cogem_program() -> dict:
    s1 = _two(_W | _D, _A | _B | _C, [(1, 1)])
    s2 = _two(_W | _A | _B, _C | _D, [(0, 0), (1, 1)])
    s3a = _two(_A | _B, _W | _C | _D, [(0, 0)])
    s3c = _two(_W | _A | _C, _B | _D, [(0, 1)])
    s4 = _two(_A | _B | _C, _W | _D, [(0, 0)])
    # once the script is exhausted the flipper repeats itself; a surviving
    # runner then shows up as a repeated configuration
    return {
        START: [(None, s1, "r1")],
        "r1": [(None, s2, "r2")],
        "r2": [(_A, s3a, "r3a"), (_C, s3c, "r3c"), (None, s2, "r2")],
        "r3a": [(None, s3a, "r3a")],
        "r3c": [(None, s4, "r4")],
        "r4": [(None, s4, "r4")],
    }


def scripted_radius1(kind: ObstructionKind) -> ScriptedStrategy:
    """Radius-1 width-2 script for the co-gem, or its complement-conjugate for the gem."""
    program = _cogem_program()
    if kind is ObstructionKind.COGEM:
        return ScriptedStrategy(kind.graph, program)
    if kind is not ObstructionKind.GEM:
        raise ValueError(f"no radius-1 script for {kind.value}")
    # conjugated specs flip complement(co-gem) into the same graphs; then move
    # everything onto the canonical gem labeling
    perm = isomorphic(complement(ObstructionKind.COGEM.graph), kind.graph)

    def move(mask):
        return None if mask is None else sum(1 << perm[v] for v in bits(mask))

    relabeled = {
        state: [(move(cond), spec.conjugate().relabel(perm), nxt) for cond, spec, nxt in branches]
        for state, branches in program.items()
    }
    return ScriptedStrategy(kind.graph, relabeled)

"""The four five-vertex obstructions and the censuses built on them.

Canonical labelings::

    C5      cycle 0-1-2-3-4-0
    BULL    triangle {0,1,2}, pendants 3-0 and 4-1
    GEM     path 0-1-2-3, vertex 4 adjacent to all of it
    COGEM   path 0-1-2-3, vertex 4 isolated
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConsistencyError
from .flips import flip_pair
from .graph import Graph, bits, components, format_set, induced_subgraph, relabel, subsets_of_size


class ObstructionKind(enum.Enum):
    C5 = "C5"
    BULL = "bull"
    GEM = "gem"
    COGEM = "co-gem"

    @property
    def graph(self) -> Graph:
        return _CANONICAL[self]


_CANONICAL = {
    ObstructionKind.C5: Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
    ObstructionKind.BULL: Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (3, 0), (4, 1)]),
    ObstructionKind.GEM: Graph.from_edges(
        5, [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]
    ),
    ObstructionKind.COGEM: Graph.from_edges(5, [(0, 1), (1, 2), (2, 3)]),
}

KINDS = tuple(ObstructionKind)


@lru_cache(maxsize=None)
def _copies() -> dict[tuple[int, ...], tuple[ObstructionKind, tuple[int, ...]]]:
    """Every labeled 5-vertex graph isomorphic to an obstruction.

    Maps adjacency rows to ``(kind, perm)`` with ``perm`` the lexicographically
    least isomorphism from the canonical pattern onto that labeled copy.
    """
    table = {}
    for kind in KINDS:
        for perm in itertools.permutations(range(5)):
            h = relabel(kind.graph, perm)
            table.setdefault(h.rows, (kind, perm))
    return table


def identify(g: Graph) -> ObstructionKind | None:
    """Which obstruction ``g`` is isomorphic to, if any."""
    if g.n != 5:
        return None
    hit = _copies().get(g.rows)
    return hit[0] if hit else None


def find_induced(g: Graph, pattern: ObstructionKind) -> tuple[int, ...] | None:
    """First embedding (pattern vertex -> vertex of ``g``) inducing ``pattern``.

    Five-subsets are scanned in ``itertools.combinations`` order.
    """
    table = _copies()
    for s in subsets_of_size(g.vertex_mask, 5):
        h, verts = induced_subgraph(g, s)
        hit = table.get(h.rows)
        if hit and hit[0] is pattern:
            return tuple(verts[i] for i in hit[1])
    return None


def is_obstruction_free(g: Graph) -> tuple[bool, tuple[ObstructionKind, tuple[int, ...]] | None]:
    """``(True, None)`` or ``(False, (kind, embedding))`` for the first kind found."""
    for kind in KINDS:
        emb = find_induced(g, kind)
        if emb is not None:
            return False, (kind, emb)
    return True, None


# ------------------------------------------------------------------- Hertz

@dataclass(frozen=True)
class HertzRow:
    kind: ObstructionKind
    a: int
    b: int
    result: ObstructionKind


def hertz_check(kind: ObstructionKind) -> list[HertzRow]:
    """Flip each of the 15 bipartitions ``(A, B)`` (``0 in A``) and classify the result."""
    g = kind.graph
    rows = []
    full = g.vertex_mask
    for a in range(1, full, 2):
        b = full ^ a
        res = identify(flip_pair(g, a, b))
        if res is None:
            raise ConsistencyError(
                f"{kind.value} + ({format_set(a)}, {format_set(b)}) left the obstruction set"
            )
        rows.append(HertzRow(kind, a, b, res))
    return rows


# ------------------------------------------------------------ flip censuses

PAIR_LABELS = ("AA", "BB", "AB")


@dataclass(frozen=True)
class FlipCensusHit:
    kind: ObstructionKind
    a: int
    pairs: tuple[str, ...]
    outcome: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "a": sorted(bits(self.a)), "pairs": list(self.pairs),
                "outcome": list(self.outcome)}

    def __str__(self) -> str:
        pairs = ", ".join(f"({p[0]}, {p[1]})" for p in self.pairs)
        return f"{self.kind.value}: A = {format_set(self.a)}, P = {{{pairs}}} -> {list(self.outcome)}"


def census_flips(kind: ObstructionKind):
    """Yield ``(A, pair labels, H)`` for every bipartition with ``|A| < |B|``.

    ``A`` may be empty; then only the trivial partition ``{V}`` is in play and
    the pair sets reduce to ``{}`` and ``{(B, B)}``.
    """
    g = kind.graph
    full = g.vertex_mask
    for size in (0, 1, 2):
        for a in subsets_of_size(full, size):
            b = full ^ a
            choices = ("BB",) if not a else PAIR_LABELS
            for r in range(len(choices) + 1):
                for combo in itertools.combinations(choices, r):
                    h = g
                    for label in combo:
                        x = a if label[0] == "A" else b
                        y = a if label[1] == "A" else b
                        h = flip_pair(h, x, y)
                    yield a, combo, h


def isolation_flip_census(kind: ObstructionKind) -> list[FlipCensusHit]:
    """Flips with at least two isolated vertices; outcome is ``(count,)``."""
    hits = []
    for a, pairs, h in census_flips(kind):
        iso = h.isolated().bit_count()
        if iso >= 2:
            hits.append(FlipCensusHit(kind, a, pairs, (iso,)))
    return hits


def component2_flip_census(kind: ObstructionKind) -> list[FlipCensusHit]:
    """Flips with a connected component on exactly two vertices; outcome is the sorted component orders."""
    hits = []
    for a, pairs, h in census_flips(kind):
        orders = tuple(sorted(c.bit_count() for c in components(h)))
        if 2 in orders:
            hits.append(FlipCensusHit(kind, a, pairs, orders))
    return hits

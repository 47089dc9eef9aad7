"""Bi-joins, strong bi-joins and the bi-join decomposition tree.

Everything is brute force over bipartitions, which is fine up to about a
dozen vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, ConsistencyError, OrderCapError
from .graph import Graph, bits, format_set, induced_subgraph

BIJOIN_CAP = 12
ROUTE_A_CAP = 10
MAX_NODE_DEGREE = 20

COMPLETE = "complete"
PRIME = "prime"


def is_complete_to(g: Graph, x: int, y: int) -> bool:
    return all(g.rows[u] & y == y for u in bits(x))


def is_anticomplete_to(g: Graph, x: int, y: int) -> bool:
    return all(not g.rows[u] & y for u in bits(x))


@dataclass(frozen=True)
class BiJoinWitness:
    """``(W1, V1 - W1, W2, V2 - W2)`` is a bi-join partition of ``(V1, V2)``."""

    v1: int
    v2: int
    w1: int
    w2: int

    @property
    def halves(self) -> tuple[int, int, int, int]:
        return self.w1, self.v1 & ~self.w1, self.w2, self.v2 & ~self.w2

    def holds(self, g: Graph) -> bool:
        w1, x1, w2, x2 = self.halves
        return (
            is_complete_to(g, w1, w2)
            and is_anticomplete_to(g, w1, x2)
            and is_complete_to(g, x1, x2)
            and is_anticomplete_to(g, x1, w2)
        )


def check_bijoin(g: Graph, v1: int) -> BiJoinWitness | None:
    """Witness that ``(V1, V(g) - V1)`` is a bi-join, or ``None``.

    The traces ``N(x) & V2`` over ``x`` in ``V1`` must take at most two values,
    complementary in ``V2`` when there are two.  ``W2`` is the trace of the
    least vertex of ``V1``.
    """
    v2 = g.vertex_mask & ~v1
    if not v1 or not v2 or v1 & ~g.vertex_mask:
        raise ValueError(f"{format_set(v1)} does not split V(g) into two nonempty sides")
    first = (v1 & -v1).bit_length() - 1
    w2 = g.rows[first] & v2
    other = v2 & ~w2
    w1 = 0
    for x in bits(v1):
        t = g.rows[x] & v2
        if t == w2:
            w1 |= 1 << x
        elif t != other:
            return None
    wit = BiJoinWitness(v1, v2, w1, w2)
    if not wit.holds(g):
        raise ConsistencyError(f"trace test accepted {format_set(v1)} but conditions fail")
    return wit


def bipartitions(n: int):
    """Sides ``V1`` containing vertex 0, ascending, with ``V2`` nonempty."""
    full = (1 << n) - 1
    return range(1, full, 2) if n >= 2 else range(0)


def enumerate_bijoins(g: Graph, cap: int = BIJOIN_CAP) -> list[tuple[int, int]]:
    if g.n > cap:
        raise OrderCapError(f"bi-join enumeration limited to {cap} vertices, got {g.n}")
    full = g.vertex_mask
    return [(v1, full ^ v1) for v1 in bipartitions(g.n) if check_bijoin(g, v1) is not None]


def overlap(p: tuple[int, int], q: tuple[int, int]) -> bool:
    a, b = p
    c, d = q
    return bool(a & c and a & d and b & c and b & d)


def strong_bijoins(g: Graph, cap: int = BIJOIN_CAP) -> list[tuple[int, int]]:
    joins = enumerate_bijoins(g, cap)
    return [p for p in joins if not any(overlap(p, q) for q in joins)]


def is_trivial(p: tuple[int, int]) -> bool:
    return p[0].bit_count() == 1 or p[1].bit_count() == 1


# ---------------------------------------------------------- decomposition

@dataclass
class DecompTree:
    """Tree whose leaves ``0..n-1`` are the graph's vertices.

    Internal nodes are numbered ``n, n+1, ...`` in creation order and carry a
    ``complete`` / ``prime`` label.
    """

    graph: Graph
    adj: dict[int, set[int]] = field(default_factory=dict)
    labels: dict[int, str] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.graph.n

    def is_leaf(self, t: int) -> bool:
        return t < self.n

    @property
    def internal_nodes(self) -> list[int]:
        return sorted(t for t in self.adj if not self.is_leaf(t))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in self.adj for v in self.adj[u] if u < v)

    def neighbors(self, t: int) -> list[int]:
        return sorted(self.adj[t])

    def side(self, t: int, u: int) -> int:
        """Leaves in the component of ``T - tu`` containing ``u``."""
        seen = {t, u}
        stack = [u]
        out = 0
        while stack:
            x = stack.pop()
            if self.is_leaf(x):
                out |= 1 << x
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return out

    def edge_bipartitions(self) -> list[tuple[int, int]]:
        """The bipartition of each tree edge, side with vertex 0 first, sorted."""
        out = set()
        for u, v in self.edges:
            a, b = self.side(v, u), self.side(u, v)
            out.add((a, b) if a & 1 else (b, a))
        return sorted(out)

    def neighbor_sides(self, t: int) -> list[int]:
        return [self.side(t, u) for u in self.neighbors(t)]

    def all_complete(self) -> bool:
        return all(self.labels[t] == COMPLETE for t in self.internal_nodes)

    def _add_edge(self, u: int, v: int) -> None:
        self.adj.setdefault(u, set()).add(v)
        self.adj.setdefault(v, set()).add(u)


def build_decomposition(g: Graph, cap: int = BIJOIN_CAP) -> DecompTree:
    """Realise the strong bi-joins of ``g`` as the edges of a tree.

    Starts from a star and, for each nontrivial strong bi-join in enumeration
    order, splits the unique internal node whose neighbour sides all fall on
    one side or the other; the sides away from vertex 0 move to a new node.
    """
    n = g.n
    if n < 1:
        raise ValueError("decomposition needs at least one vertex")
    tree = DecompTree(g, {v: set() for v in range(n)})
    if n == 2:
        tree._add_edge(0, 1)
    if n <= 2:
        return tree

    strong = strong_bijoins(g, cap)
    for i, p in enumerate(strong):
        for q in strong[i + 1:]:
            if overlap(p, q):
                raise ConsistencyError(f"strong bi-joins overlap: {p} and {q}")

    center = n
    tree.adj[center] = set()
    for v in range(n):
        tree._add_edge(center, v)
    next_id = n + 1
    for v1, v2 in strong:
        if is_trivial((v1, v2)):
            continue
        for t in tree.internal_nodes:
            nbrs = tree.neighbors(t)
            sides = [tree.side(t, u) for u in nbrs]
            if any(s & v1 and s & v2 for s in sides):
                continue
            move = [u for u, s in zip(nbrs, sides) if s & v2]
            if len(move) < 2 or len(nbrs) - len(move) < 2:
                continue
            new = next_id
            next_id += 1
            tree.adj[new] = set()
            for u in move:
                tree.adj[t].discard(u)
                tree.adj[u].discard(t)
                tree._add_edge(new, u)
            tree._add_edge(t, new)
            break
        else:
            raise ConsistencyError(
                f"no tree node splits along {format_set(v1)} | {format_set(v2)}"
            )

    for t in tree.internal_nodes:
        tree.labels[t] = label_node(g, tree.neighbor_sides(t))
    return tree


def label_node(g: Graph, sides: list[int]) -> str:
    """``complete`` iff every union of a proper nonempty subfamily of sides is a bi-join."""
    k = len(sides)
    if k > MAX_NODE_DEGREE:
        raise BudgetExceeded(1 << k, 1 << MAX_NODE_DEGREE, "side unions")
    for sel in range(1, (1 << k) - 1):
        if not sel & 1:
            continue  # complements give the same bipartition
        union = 0
        for i in range(k):
            if sel >> i & 1:
                union |= sides[i]
        if check_bijoin(g, union) is None:
            return PRIME
    return COMPLETE


def has_nontrivial_bijoin(g: Graph) -> bool:
    for v1 in bipartitions(g.n):
        if 2 <= v1.bit_count() <= g.n - 2 and check_bijoin(g, v1) is not None:
            return True
    return False


def decomposable_by_subgraphs(g: Graph) -> bool:
    """Every induced subgraph on at least four vertices has a nontrivial bi-join."""
    full = g.vertex_mask
    for s in range(full + 1):
        if s.bit_count() >= 4 and not has_nontrivial_bijoin(induced_subgraph(g, s)[0]):
            return False
    return True


@dataclass(frozen=True)
class Decomposability:
    value: bool
    by_subgraphs: bool | None  # None when skipped for size
    by_tree: bool


def is_completely_decomposable(g: Graph, route_a_cap: int = ROUTE_A_CAP) -> Decomposability:
    """Complete decomposability computed twice, by subgraph scan and by tree labels."""
    by_tree = g.n < 1 or build_decomposition(g).all_complete()
    by_subgraphs = decomposable_by_subgraphs(g) if g.n <= route_a_cap else None
    if by_subgraphs is not None and by_subgraphs != by_tree:
        raise ConsistencyError(
            f"decomposability routes disagree: subgraphs={by_subgraphs}, tree={by_tree}"
        )
    return Decomposability(by_tree, by_subgraphs, by_tree)

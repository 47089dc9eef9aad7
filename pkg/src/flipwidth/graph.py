"""Small simple graphs as immutable bitset adjacency rows.

Vertices are ``0..n-1`` and vertex sets are ints used as bitmasks: bit ``v``
set means ``v`` is a member.  Everything here is a pure function over
immutable values.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import Graph6Error, OrderCapError

DEFAULT_MAX_ORDER = 16
GRAPH6_HEADER = ">>graph6<<"

Radius = int | float  # positive int, or math.inf
INF = math.inf


def max_order() -> int:
    """Order cap, overridable through ``FLIPWIDTH_MAX_N``."""
    raw = os.environ.get("FLIPWIDTH_MAX_N")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise OrderCapError(f"FLIPWIDTH_MAX_N must be an integer, got {raw!r}") from None


def parse_radius(text: str | int | float) -> Radius:
    if isinstance(text, (int, float)):
        r = text
    else:
        t = text.strip().lower()
        if t in ("inf", "infinity", "oo", "∞"):
            return INF
        r = int(t)
    if r != INF and (r < 1 or int(r) != r):
        raise ValueError(f"radius must be a positive integer or inf, got {text!r}")
    return r if r == INF else int(r)


def format_radius(r: Radius) -> str:
    return "inf" if r == INF else str(int(r))


def bits(mask: int) -> Iterator[int]:
    """Yield the members of a bitmask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def format_set(mask: int) -> str:
    return "{" + ",".join(map(str, bits(mask))) + "}"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``rows[v]`` is the neighbourhood bitmask of ``v``."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("order must be non-negative")
        cap = max_order()
        if self.n > cap:
            raise OrderCapError(f"graph order {self.n} exceeds cap {cap} (set FLIPWIDTH_MAX_N)")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} names vertices outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v},{u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        return self.rows[v]

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in bits(self.rows[v] & ((1 << v) - 1))]

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def isolated(self) -> int:
        """Bitmask of isolated vertices."""
        m = 0
        for v, row in enumerate(self.rows):
            if not row:
                m |= 1 << v
        return m

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ----------------------------------------------------------------- builders

def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def edgeless(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    rows = list(g.rows) + [r << g.n for r in h.rows]
    return Graph(g.n + h.n, tuple(rows))


# ---------------------------------------------------------------- operations

def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.rows)))


def induced_subgraph(g: Graph, s: int) -> tuple[Graph, tuple[int, ...]]:
    """Return ``G[S]`` and the order-preserving map new index -> old vertex."""
    if s & ~g.vertex_mask:
        raise ValueError("vertex set is not a subset of V(g)")
    verts = tuple(bits(s))
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        rows.append(mask_of(pos[u] for u in bits(g.rows[v] & s)))
    return Graph(len(verts), tuple(rows)), verts


def ball(g: Graph, v: int, r: Radius) -> int:
    """Vertices reachable from ``v`` along a path of length at most ``r``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} not in graph of order {g.n}")
    seen = frontier = 1 << v
    steps = 0
    while frontier and steps < r:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.rows[u]
        frontier = nxt & ~seen
        seen |= frontier
        steps += 1
    return seen


def component(g: Graph, v: int) -> int:
    return ball(g, v, INF)


def components(g: Graph) -> list[int]:
    out = []
    left = g.vertex_mask
    while left:
        v = (left & -left).bit_length() - 1
        c = component(g, v)
        out.append(c)
        left &= ~c
    return out


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    rows = [0] * g.n
    for v in range(g.n):
        rows[perm[v]] = mask_of(perm[u] for u in bits(g.rows[v]))
    return Graph(g.n, tuple(rows))


def isomorphic(g: Graph, h: Graph) -> tuple[int, ...] | None:
    """Lexicographically least bijection ``perm`` with ``uv in E(g) <=> perm[u]perm[v] in E(h)``.

    Backtracking over vertices of ``g`` in order, candidates restricted to equal degree.
    """
    if g.n != h.n:
        return None
    gd, hd = g.degrees(), h.degrees()
    if sorted(gd) != sorted(hd):
        return None
    n = g.n
    perm = [-1] * n

    def extend(i: int, used: int) -> bool:
        if i == n:
            return True
        gi = g.rows[i]
        for c in range(n):
            if used >> c & 1 or hd[c] != gd[i]:
                continue
            hc = h.rows[c]
            if all((gi >> j & 1) == (hc >> perm[j] & 1) for j in range(i)):
                perm[i] = c
                if extend(i + 1, used | 1 << c):
                    return True
        perm[i] = -1
        return False

    return tuple(perm) if extend(0, 0) else None


def invariant(g: Graph) -> tuple:
    """Cheap isomorphism invariant used to bucket candidates before exact checks."""
    deg = g.degrees()
    local = sorted((deg[v], tuple(sorted(deg[u] for u in bits(g.rows[v])))) for v in range(g.n))
    tri = sum((g.rows[u] & g.rows[v]).bit_count() for u, v in g.edges()) // 3
    return (g.n, g.num_edges, tri, tuple(local))


# ------------------------------------------------------------------- graph6

def _pair_order(n: int) -> Iterator[tuple[int, int]]:
    for j in range(1, n):
        for i in range(j):
            yield i, j


def emit_graph6(g: Graph) -> str:
    if g.n > 62:
        raise Graph6Error(f"order {g.n} needs the long size form, which is unsupported")
    bitlist = [1 if g.has_edge(i, j) else 0 for i, j in _pair_order(g.n)]
    bitlist += [0] * (-len(bitlist) % 6)
    out = [chr(63 + g.n)]
    for k in range(0, len(bitlist), 6):
        val = 0
        for b in bitlist[k:k + 6]:
            val = val << 1 | b
        out.append(chr(63 + val))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.rstrip("\r\n")
    start = 0
    if s.startswith(GRAPH6_HEADER):
        start = len(GRAPH6_HEADER)
    body = s[start:]
    if not body:
        raise Graph6Error("empty graph6 string", start)
    for i, ch in enumerate(body):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"non-printable or out-of-range character {ch!r}", start + i)
    n = ord(body[0]) - 63
    if n == 63:
        raise Graph6Error("long size form (order > 62) is unsupported", start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(body) - 1 != nbytes:
        raise Graph6Error(
            f"order {n} needs {nbytes} data bytes, found {len(body) - 1}", start
        )
    rows = [0] * n
    pairs = _pair_order(n)
    for b in range(nbytes):
        val = ord(body[1 + b]) - 63
        for k in range(6):
            bit = val >> (5 - k) & 1
            idx = 6 * b + k
            if idx >= nbits:
                if bit:
                    raise Graph6Error("nonzero padding bits", start + 1 + b)
                continue
            i, j = next(pairs)
            if bit:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


# -------------------------------------------------------------- enumeration

DEDUPE_CAP = 7


def enumerate_graphs(n: int, dedupe: bool = True, cap: int = DEDUPE_CAP) -> Iterator[Graph]:
    """All labeled graphs on ``n`` vertices, or one per isomorphism class.

    Labeled mode counts the upper-triangle bitmask upward in graph6 pair
    order.  Dedupe mode extends each class representative on ``n-1``
    vertices by a new vertex in every possible way and keeps one graph per
    class (bucketed by :func:`invariant`, confirmed by :func:`isomorphic`);
    the output is sorted by edge count then graph6.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise OrderCapError(f"refusing to enumerate graphs on {n} > {cap} vertices")
    if not dedupe:
        pairs = list(_pair_order(n))
        for code in range(1 << len(pairs)):
            rows = [0] * n
            for b, (i, j) in enumerate(pairs):
                if code >> b & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            yield Graph(n, tuple(rows))
        return
    yield from _classes(n)


def _classes(n: int) -> list[Graph]:
    reps = [edgeless(0)]
    for m in range(1, n + 1):
        buckets: dict[tuple, list[Graph]] = {}
        for h in reps:
            for nbrs in range(1 << (m - 1)):
                rows = list(h.rows) + [nbrs]
                for u in bits(nbrs):
                    rows[u] |= 1 << (m - 1)
                g = Graph(m, tuple(rows))
                bucket = buckets.setdefault(invariant(g), [])
                if not any(isomorphic(g, other) is not None for other in bucket):
                    bucket.append(g)
        reps = [g for bucket in buckets.values() for g in bucket]
    return sorted(reps, key=lambda g: (g.num_edges, emit_graph6(g)))


def count_labeled(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def all_subsets(mask: int) -> Iterator[int]:
    """Every submask of ``mask`` (including 0 and ``mask``), ascending."""
    members = list(bits(mask))
    for combo in range(1 << len(members)):
        yield mask_of(members[i] for i in range(len(members)) if combo >> i & 1)


def subsets_of_size(mask: int, k: int) -> Iterator[int]:
    for combo in itertools.combinations(bits(mask), k):
        yield mask_of(combo)

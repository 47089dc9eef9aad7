"""Flips ``G + (A, B)``, partition flips and exhaustive k-flip enumeration."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import BudgetExceeded, InvalidFlipSpec
from .graph import Graph, bits, format_set, mask_of

DEFAULT_FLIP_BUDGET = 2_000_000


def flip_pair(g: Graph, a: int, b: int) -> Graph:
    """Toggle every pair ``uv`` with ``(u, v)`` in ``A x B`` or ``B x A``, ``u != v``.

    ``a`` and ``b`` may overlap; pairs inside ``A & B`` are toggled once.
    """
    rows = list(g.rows)
    for u in range(g.n):
        t = (b if a >> u & 1 else 0) | (a if b >> u & 1 else 0)
        rows[u] ^= t & ~(1 << u)
    return Graph(g.n, tuple(rows))


def all_pairs(p: int) -> tuple[tuple[int, int], ...]:
    """Unordered part-index pairs ``(i, j)``, ``i <= j``, in lexicographic order."""
    return tuple((i, j) for i in range(p) for j in range(i, p))


@dataclass(frozen=True)
class FlipSpec:
    """A partition (as bitmask parts) and the part-index pairs to flip.

    Construct through :meth:`make` to get the canonical form: no empty
    parts, parts ordered by least member, pairs ``(i, j)`` with ``i <= j``
    sorted and deduplicated.
    """

    parts: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def make(cls, parts: Iterable[int], pairs: Iterable[tuple[int, int]] = ()) -> FlipSpec:
        parts = list(parts)
        keep = sorted((i for i, p in enumerate(parts) if p), key=lambda i: parts[i] & -parts[i])
        remap = {old: new for new, old in enumerate(keep)}
        out = set()
        for i, j in pairs:
            if not (0 <= i < len(parts) and 0 <= j < len(parts)):
                raise InvalidFlipSpec(f"pair ({i},{j}) out of range for {len(parts)} parts")
            if i in remap and j in remap:
                x, y = remap[i], remap[j]
                out.add((min(x, y), max(x, y)))
        return cls(tuple(parts[i] for i in keep), tuple(sorted(out)))

    @classmethod
    def identity(cls, n: int) -> FlipSpec:
        return cls(((1 << n) - 1,) if n else (), ())

    @property
    def width(self) -> int:
        return len(self.parts)

    def conjugate(self) -> FlipSpec:
        """Same partition, pair set XOR the all-pairs set (flips into the complement)."""
        return FlipSpec(self.parts, tuple(sorted(set(all_pairs(len(self.parts))) ^ set(self.pairs))))

    def relabel(self, perm) -> FlipSpec:
        return FlipSpec.make([mask_of(perm[v] for v in bits(p)) for p in self.parts], self.pairs)

    def __str__(self) -> str:
        parts = ",".join(format_set(p) for p in self.parts)
        pairs = ",".join(f"({i},{j})" for i, j in self.pairs)
        return f"parts=[{parts}] pairs=[{pairs}]"


_SPEC_RE = re.compile(r"^\s*parts=\[(?P<parts>.*)\]\s+pairs=\[(?P<pairs>.*)\]\s*$")


def parse_flipspec(text: str) -> FlipSpec:
    """Inverse of ``str(FlipSpec)``; the result is canonicalised."""
    m = _SPEC_RE.match(text)
    if not m:
        raise InvalidFlipSpec(f"cannot parse flip spec {text!r}")
    parts_txt = m.group("parts").strip()
    parts = []
    for chunk in re.findall(r"\{([^{}]*)\}", parts_txt):
        items = [c.strip() for c in chunk.split(",") if c.strip()]
        try:
            parts.append(mask_of(int(c) for c in items))
        except ValueError:
            raise InvalidFlipSpec(f"bad vertex in part {{{chunk}}}") from None
    if re.sub(r"\{[^{}]*\}|,|\s", "", parts_txt):
        raise InvalidFlipSpec(f"malformed parts list {parts_txt!r}")
    pairs_txt = m.group("pairs").strip()
    pairs = [(int(a), int(b)) for a, b in re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", pairs_txt)]
    if re.sub(r"\(\s*\d+\s*,\s*\d+\s*\)|,|\s", "", pairs_txt):
        raise InvalidFlipSpec(f"malformed pairs list {pairs_txt!r}")
    return FlipSpec.make(parts, pairs)


def check_spec(g: Graph, spec: FlipSpec) -> None:
    seen = 0
    for p in spec.parts:
        if not p:
            raise InvalidFlipSpec("empty part")
        if p & seen:
            raise InvalidFlipSpec("parts overlap")
        seen |= p
    if seen != g.vertex_mask:
        raise InvalidFlipSpec(
            f"partition covers {format_set(seen)}, graph has vertices {format_set(g.vertex_mask)}"
        )
    for i, j in spec.pairs:
        if not (0 <= i < len(spec.parts) and 0 <= j < len(spec.parts)):
            raise InvalidFlipSpec(f"pair ({i},{j}) out of range")


def apply_flip(g: Graph, spec: FlipSpec) -> Graph:
    check_spec(g, spec)
    return _apply(g, spec.parts, spec.pairs)


def _apply(g: Graph, parts, pairs) -> Graph:
    toggle = [0] * len(parts)
    for i, j in set(pairs):
        toggle[i] |= parts[j]
        if i != j:
            toggle[j] |= parts[i]
    rows = list(g.rows)
    for idx, p in enumerate(parts):
        t = toggle[idx]
        if t:
            for u in bits(p):
                rows[u] ^= t & ~(1 << u)
    return Graph(g.n, tuple(rows))


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def raw_kflip_count(n: int, k: int) -> int:
    """Number of (partition, pair subset) specs with at most ``k`` parts."""
    if n == 0:
        return 1
    return sum(stirling2(n, p) << (p * (p + 1) // 2) for p in range(1, min(k, n) + 1))


def partitions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``range(n)`` into at most ``k`` parts as bitmask tuples.

    Restricted growth strings in lexicographic order; part ``i`` is the set of
    vertices labelled ``i``, so parts come out ordered by least member.
    """
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            parts = [0] * used
            for v, label in enumerate(rgs):
                parts[label] |= 1 << v
            yield tuple(parts)
            return
        for label in range(min(used + 1, k)):
            rgs[i] = label
            yield from rec(i + 1, max(used, label + 1))

    rgs[0] = 0
    yield from rec(1, 1)


def iter_kflip_specs(n: int, k: int) -> Iterator[FlipSpec]:
    """Every raw k-flip spec in the deterministic enumeration order."""
    for parts in partitions(n, k):
        plist = all_pairs(len(parts))
        for code in range(1 << len(plist)):
            yield FlipSpec(parts, tuple(plist[b] for b in range(len(plist)) if code >> b & 1))


def enumerate_kflips(
    g: Graph, k: int, budget: int = DEFAULT_FLIP_BUDGET
) -> list[tuple[FlipSpec, Graph]]:
    """Distinct k-flips of ``g``, each with its first witnessing spec.

    The identity flip comes first.  Raises :class:`BudgetExceeded` when the
    raw number of specs is larger than ``budget``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    needed = raw_kflip_count(g.n, k)
    if needed > budget:
        raise BudgetExceeded(needed, budget, "flip specs")
    seen: dict[tuple[int, ...], int] = {}
    out: list[tuple[FlipSpec, Graph]] = []
    for spec in iter_kflip_specs(g.n, k):
        h = _apply(g, spec.parts, spec.pairs)
        if h.rows not in seen:
            seen[h.rows] = len(out)
            out.append((spec, h))
    return out

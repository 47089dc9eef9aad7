"""Text-mode flipper game against the solver."""

from __future__ import annotations

import sys
from typing import TextIO

from .errors import InvalidFlipSpec
from .flips import apply_flip, parse_flipspec
from .game import GameVerdict, evasive_move, solve
from .graph import Graph, Radius, ball, bits, format_radius


def _edges(h: Graph) -> str:
    return " ".join(f"{u}{'-'}{v}" for u, v in h.edges()) or "(no edges)"


def _ask(inp: TextIO, out: TextIO, prompt: str) -> str | None:
    out.write(prompt)
    out.flush()
    line = inp.readline()
    if not line:
        return None
    return line.strip()


def _machine_flip(verdict: GameVerdict, last: int, runner: int) -> int:
    if (last, runner) in verdict.strategy:
        return verdict.strategy[(last, runner)]
    # losing position: maximise isolated vertices near the runner
    graphs = verdict.arena.graphs
    reach = ball(graphs[last], runner, verdict.arena.radius)
    return max(range(len(graphs)), key=lambda f: ((graphs[f].isolated() & reach).bit_count(), -f))


def play(
    g: Graph,
    r: Radius,
    k: int,
    role: str,
    inp: TextIO = sys.stdin,
    out: TextIO = sys.stdout,
) -> str:
    """Run one game; returns ``"caught"``, ``"survived"`` or ``"quit"``."""
    verdict = solve(g, k, r)
    graphs = verdict.arena.graphs
    index = {h.rows: f for f, h in enumerate(graphs)}
    out.write(f"flipper game on n={g.n}, width {k}, radius {format_radius(r)}; "
              f"{'flipper' if verdict.flipper_wins else 'runner'} wins with best play\n")
    out.write(f"G0 edges: {_edges(g)}\n")
    if role not in ("runner", "flipper"):
        raise ValueError(f"role must be runner or flipper, got {role!r}")

    if role == "runner":
        while True:
            ans = _ask(inp, out, f"start vertex (0..{g.n - 1}): ")
            if ans is None:
                return "quit"
            if ans.isdigit() and int(ans) < g.n:
                v = int(ans)
                break
            out.write(f"illegal start; legal: {list(range(g.n))}\n")
    else:
        starts = [v for v in range(g.n) if (0, v) in verdict.safe_region]
        v = starts[0] if starts else max(range(g.n), key=lambda u: (verdict.ranks.get((0, u), 0), -u))
        out.write(f"runner starts at {v}\n")

    last = 0
    seen = {(last, v)}
    rnd = 0
    while True:
        rnd += 1
        if role == "runner":
            f = _machine_flip(verdict, last, v)
            out.write(f"round {rnd}: flipper announces {verdict.arena.flips[f][0]}\n")
            out.write(f"  G{rnd} edges: {_edges(graphs[f])}\n")
            legal = list(bits(ball(graphs[last], v, r)))
            while True:
                ans = _ask(inp, out, f"  move to {legal}: ")
                if ans is None:
                    return "quit"
                if ans.isdigit() and int(ans) in legal:
                    v = int(ans)
                    break
                out.write(f"  illegal move; legal: {legal}\n")
        else:
            while True:
                ans = _ask(inp, out, f"round {rnd}: announce flip (parts=[...] pairs=[...]): ")
                if ans is None:
                    return "quit"
                try:
                    spec = parse_flipspec(ans)
                    if spec.width > k:
                        raise InvalidFlipSpec(f"{spec.width} parts exceed width {k}")
                    h = apply_flip(g, spec)
                except InvalidFlipSpec as exc:
                    out.write(f"  rejected: {exc}\n")
                    continue
                f = index[h.rows]
                break
            out.write(f"  G{rnd} edges: {_edges(graphs[f])}\n")
            u = evasive_move(verdict, last, v, f)
            # every legal move is caught: take the least one
            v = u if u is not None else next(bits(ball(graphs[last], v, r)))
            out.write(f"  runner moves to {v}\n")
        if not graphs[f].rows[v]:
            out.write(f"caught in round {rnd}: vertex {v} is isolated in G{rnd}\n")
            return "caught"
        last = f
        if (last, v) in seen:
            out.write("configuration repeated; the runner survives\n")
            return "survived"
        seen.add((last, v))

"""Command-line entry point: ``flipwidth <command> ...``."""

from __future__ import annotations

import argparse
import logging
import re
import sys

from . import graph as gr
from .census import generated, read_corpus, run_census
from .errors import FlipwidthError
from .export import FORMATS, UnsupportedExport, dumps, export
from .game import TableStrategy, flip_width, solve, verify_strategy
from .graph import Graph, emit_graph6, format_radius, parse_graph6, parse_radius
from .obstructions import (
    KINDS,
    ObstructionKind,
    component2_flip_census,
    hertz_check,
    is_obstruction_free,
    isolation_flip_census,
)
from .play import play
from .strategy import scripted_radius1, synthesize_strategy
from .bijoin import build_decomposition

class UsageError(Exception):
    pass


NAMED = {k.value.lower().replace("-", ""): k for k in KINDS}


def resolve_graph(text: str) -> Graph:
    """A graph6 string, an obstruction name, or ``Cn`` / ``Pn`` / ``Kn`` / ``En``."""
    key = text.strip().lower().replace("-", "")
    if key in NAMED:
        return NAMED[key].graph
    m = re.fullmatch(r"([cpke])(\d+)", key)
    if m:
        n = int(m.group(2))
        return {"c": gr.cycle, "p": gr.path, "k": gr.complete, "e": gr.edgeless}[m.group(1)](n)
    return parse_graph6(text.strip())


def _kind_of(text: str) -> ObstructionKind | None:
    return NAMED.get(text.strip().lower().replace("-", ""))


def _emit(text: str) -> None:
    sys.stdout.write(text)


def cmd_solve(args) -> int:
    verdict = solve(resolve_graph(args.graph), args.width, args.radius)
    _emit(export(verdict, args.format))
    return 0


def cmd_flipwidth(args) -> int:
    g = resolve_graph(args.graph)
    k = flip_width(g, args.radius)
    _emit(f"{emit_graph6(g)} fw_{format_radius(args.radius)} = {k}\n")
    return 0


def cmd_obstructions(args) -> int:
    if args.hertz:
        rows = [row for kind in KINDS for row in hertz_check(kind)]
        if args.format == "json":
            _emit("".join(dumps({"kind": r.kind.value, "a": sorted(gr.bits(r.a)),
                                 "b": sorted(gr.bits(r.b)), "result": r.result.value}) + "\n"
                          for r in rows))
        else:
            for r in rows:
                _emit(f"{r.kind.value} + ({gr.format_set(r.a)}, {gr.format_set(r.b)}) = {r.result.value}\n")
        return 0
    if args.graph is None:
        raise UsageError("obstructions: give a graph or --hertz")
    g = resolve_graph(args.graph)
    free, wit = is_obstruction_free(g)
    if args.format == "json":
        _emit(dumps({"graph6": emit_graph6(g), "obstruction_free": free,
                     "witness": None if wit is None else {"kind": wit[0].value, "embedding": list(wit[1])}})
              + "\n")
    else:
        _emit("obstruction-free\n" if free else f"contains {wit[0].value} at {list(wit[1])}\n")
    return 0


def cmd_decompose(args) -> int:
    _emit(export(build_decomposition(resolve_graph(args.graph)), args.format))
    return 0


def cmd_synthesize(args) -> int:
    _emit(export(synthesize_strategy(resolve_graph(args.graph)), args.format))
    return 0


def cmd_verify(args) -> int:
    if args.strategy == "script":
        kind = _kind_of(args.graph)
        if kind not in (ObstructionKind.GEM, ObstructionKind.COGEM):
            raise UsageError("verify: scripts exist only for gem and co-gem")
        strat = scripted_radius1(kind)
        g = strat.graph
    else:
        g = resolve_graph(args.graph)
        if args.strategy == "solver":
            verdict = solve(g, args.width, args.radius)
            if not verdict.flipper_wins:
                _emit("flipper loses; no strategy to verify\n")
                return 1
            strat = TableStrategy(verdict)
        else:
            strat = synthesize_strategy(g)
    result = verify_strategy(g, args.radius, strat, width=args.width)
    if args.format == "json":
        _emit(dumps({"graph6": emit_graph6(g), "r": format_radius(args.radius), "ok": result.ok,
                     "max_rounds": result.max_rounds, "trace": result.trace}) + "\n")
    elif result.ok:
        _emit(f"verified: runner caught within {result.max_rounds} rounds\n")
    else:
        _emit("FAILED: the runner survives along this play\n")
        for step in result.trace:
            _emit(f"  state={step['state']!s} announced={step['graph6']} runner={step['runner']}\n")
    return 0 if result.ok else 1


def cmd_census(args) -> int:
    if args.corpus:
        graphs = read_corpus(args.corpus)
    elif args.n is not None:
        graphs = generated(args.n, args.min_n)
    else:
        raise UsageError("census: give --n or --corpus")
    report = run_census(graphs, args.radius, args.width, jobs=args.jobs, cache=args.cache)
    if args.format == "json":
        _emit(report.to_jsonl())
        sys.stderr.write(dumps(report.summary) + "\n")
    else:
        _emit(report.to_text())
    return report.exit_code


def cmd_play(args) -> int:
    play(resolve_graph(args.graph), args.radius, args.width, args.role)
    return 0


def cmd_lemmas(args) -> int:
    for title, census in (("isolated vertices", isolation_flip_census),
                          ("two-vertex components", component2_flip_census)):
        hits = [h for kind in KINDS for h in census(kind)]
        if args.format == "json":
            _emit(dumps({"census": title, "hits": [h.to_json() for h in hits]}) + "\n")
            continue
        _emit(f"flips of obstructions with {title}, |A| < |B|:\n")
        for h in hits:
            _emit(f"  {h}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flipwidth", description="Exact flipper-game laboratory.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, graph=True, fmt=("json", "text"), default_fmt="text"):
        sp = sub.add_parser(name, help=help)
        if graph:
            sp.add_argument("graph", help="graph6 string or a name like C5, bull, gem, co-gem, P4, K3")
        sp.add_argument("--radius", "-r", type=parse_radius, default=gr.INF, help="int or inf")
        sp.add_argument("--width", "-k", type=int, default=2)
        sp.add_argument("--format", choices=fmt, default=default_fmt)
        sp.set_defaults(func=func)
        return sp

    add("solve", cmd_solve, "decide the flipper game")
    add("flipwidth", cmd_flipwidth, "exact radius-r flip-width")
    ob = add("obstructions", cmd_obstructions, "search for C5 / bull / gem / co-gem", graph=False)
    ob.add_argument("graph", nargs="?")
    ob.add_argument("--hertz", action="store_true", help="print the bipartition-flip table")
    add("decompose", cmd_decompose, "bi-join decomposition", fmt=FORMATS)
    add("synthesize", cmd_synthesize, "width-2 strategy from the decomposition", fmt=FORMATS)
    ver = add("verify", cmd_verify, "exhaustively check a strategy")
    ver.add_argument("--strategy", choices=("synth", "solver", "script"), default="synth")
    cen = add("census", cmd_census, "check the characterization over a corpus", graph=False)
    cen.add_argument("--n", type=int, help="generate all graphs on n vertices")
    cen.add_argument("--min-n", type=int, help="with --n, generate every order from min-n to n")
    cen.add_argument("--corpus", help="file of graph6 lines")
    cen.add_argument("--cache", help="append-only JSONL cache")
    cen.add_argument("--jobs", type=int, default=1)
    pl = add("play", cmd_play, "play interactively against the solver")
    pl.add_argument("--role", choices=("runner", "flipper"), default="runner")
    add("lemmas", cmd_lemmas, "censuses of flips with isolated vertices / 2-vertex components",
        graph=False)
    return p


def main(argv=None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8", newline="\n")
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (FlipwidthError, UnsupportedExport, UsageError) as exc:
        sys.stderr.write(f"flipwidth: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

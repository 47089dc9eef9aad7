"""JSON, DOT and text renderings of verdicts, trees, strategies and censuses.

All output is deterministic: JSON keys are sorted and node ids are stable.
"""

from __future__ import annotations

import json

from .bijoin import DecompTree
from .game import GameVerdict
from .graph import bits, emit_graph6, format_radius, format_set
from .strategy import START, SynthesizedStrategy

FORMATS = ("json", "dot", "text")


class UnsupportedExport(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


# ---------------------------------------------------------------- verdicts

def state_label(verdict: GameVerdict, state) -> str:
    f, v = state
    return f"{emit_graph6(verdict.arena.flips[f][1])}@{v}"


def verdict_to_json(verdict: GameVerdict) -> dict:
    states = sorted(verdict.strategy)
    return {
        "graph6": emit_graph6(verdict.graph),
        "k": verdict.arena.width,
        "r": format_radius(verdict.arena.radius),
        "flipper_wins": verdict.flipper_wins,
        "ranks": {state_label(verdict, s): verdict.ranks[s] for s in states},
        "strategy": [[state_label(verdict, s), str(verdict.spec_for(s))] for s in states],
    }


def verdict_to_text(verdict: GameVerdict) -> str:
    a = verdict.arena
    head = (
        f"graph {emit_graph6(verdict.graph)}  k={a.width}  r={format_radius(a.radius)}  "
        f"flips={len(a.flips)}"
    )
    if not verdict.flipper_wins:
        starts = sorted(v for f, v in verdict.safe_region if f == 0)
        return f"{head}\nrunner wins; safe starting vertices {starts}\n"
    lines = [head, "flipper wins"]
    for v in range(verdict.graph.n):
        s = (0, v)
        lines.append(f"  start {v}: rank {verdict.ranks[s]}, first flip {verdict.spec_for(s)}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- trees

def _node_name(t: int) -> str:
    return f"n{t}"


def tree_to_dot(tree: DecompTree) -> str:
    lines = ["graph decomposition {"]
    for t in sorted(tree.adj):
        if tree.is_leaf(t):
            lines.append(f'  {_node_name(t)} [label="{t}", shape=circle];')
        else:
            lines.append(f'  {_node_name(t)} [label="{tree.labels[t]}", shape=box];')
    for u, v in tree.edges:
        lines.append(f"  {_node_name(u)} -- {_node_name(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_json(tree: DecompTree) -> dict:
    nodes = []
    for t in sorted(tree.adj):
        if tree.is_leaf(t):
            nodes.append({"id": _node_name(t), "kind": "leaf", "vertex": t})
        else:
            nodes.append({"id": _node_name(t), "kind": tree.labels[t]})
    edges = [
        {"ends": [_node_name(u), _node_name(v)],
         "sides": [sorted(bits(tree.side(v, u))), sorted(bits(tree.side(u, v)))]}
        for u, v in tree.edges
    ]
    return {"graph6": emit_graph6(tree.graph), "nodes": nodes, "edges": edges}


def tree_to_text(tree: DecompTree) -> str:
    lines = [f"bi-join decomposition of {emit_graph6(tree.graph)}"]
    for t in tree.internal_nodes:
        sides = " | ".join(format_set(s) for s in tree.neighbor_sides(t))
        lines.append(f"  {_node_name(t)} {tree.labels[t]}: {sides}")
    if not tree.internal_nodes:
        lines.append("  (no internal node)")
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------- strategies

def _phase_id(key) -> str:
    return START if key == START else f"t{key[0]}p{key[1]}"


def strategy_decisions(strat: SynthesizedStrategy) -> tuple[list[dict], list[dict]]:
    """Decision graph: one node per phase, edges labelled by where the runner is seen."""
    if strat.direct is not None:
        nodes = [{"id": START, "spec": str(strat.direct)}]
        return nodes, [{"from": START, "to": "caught",
                        "runner_in": sorted(bits(strat.graph.vertex_mask))}]

    def entry(t: int) -> str:
        while not strat.tree.is_leaf(t) and len(strat.children[t]) == 1:
            t = strat.children[t][0]
        return "caught" if strat.tree.is_leaf(t) else _phase_id((t, 1))

    nodes = [{"id": START, "spec": None}]
    edges = [{"from": START, "to": entry(strat.root),
              "runner_in": sorted(bits(strat.graph.vertex_mask))}]
    for key in sorted(strat.phases):
        ph = strat.phases[key]
        t, i = key
        kids = strat.children[t]
        nodes.append({"id": _phase_id(key), "node": t, "phase": i, "case": ph.case,
                      "spec": str(ph.spec)})
        here = _phase_id(key)
        edges.append({"from": here, "to": entry(kids[i - 1]),
                      "runner_in": sorted(bits(strat.below[kids[i - 1]]))})
        if i == len(kids) - 1:
            edges.append({"from": here, "to": entry(kids[-1]),
                          "runner_in": sorted(bits(strat.below[kids[-1]]))})
        else:
            rest = 0
            for k in kids[i:]:
                rest |= strat.below[k]
            edges.append({"from": here, "to": _phase_id((t, i + 1)),
                          "runner_in": sorted(bits(rest))})
    return nodes, edges


def strategy_to_json(strat: SynthesizedStrategy) -> dict:
    nodes, edges = strategy_decisions(strat)
    return {"graph6": emit_graph6(strat.graph), "nodes": nodes, "edges": edges}


def strategy_to_dot(strat: SynthesizedStrategy) -> str:
    nodes, edges = strategy_decisions(strat)
    lines = ["digraph strategy {", '  caught [label="caught", shape=doublecircle];']
    for node in nodes:
        label = node["id"] if node["spec"] is None else f'{node["id"]}\\n{node["spec"]}'
        lines.append(f'  {node["id"]} [label="{label}", shape=box];')
    for e in edges:
        lines.append(f'  {e["from"]} -> {e["to"]} [label="{{{",".join(map(str, e["runner_in"]))}}}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def strategy_to_text(strat: SynthesizedStrategy) -> str:
    nodes, edges = strategy_decisions(strat)
    lines = [f"width-2 strategy for {emit_graph6(strat.graph)}"]
    for node in nodes:
        lines.append(f"  {node['id']}: {node['spec'] or '(observe start vertex)'}")
    for e in edges:
        lines.append(f"    {e['from']} --runner in {{{','.join(map(str, e['runner_in']))}}}--> {e['to']}")
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------- dispatcher

def export(obj, fmt: str) -> str:
    from .census import CensusReport

    if fmt not in FORMATS:
        raise UnsupportedExport(f"unknown format {fmt!r}")
    if isinstance(obj, GameVerdict):
        if fmt == "json":
            return dumps(verdict_to_json(obj)) + "\n"
        if fmt == "text":
            return verdict_to_text(obj)
    elif isinstance(obj, DecompTree):
        return {"json": lambda t: dumps(tree_to_json(t)) + "\n", "dot": tree_to_dot,
                "text": tree_to_text}[fmt](obj)
    elif isinstance(obj, SynthesizedStrategy):
        return {"json": lambda s: dumps(strategy_to_json(s)) + "\n", "dot": strategy_to_dot,
                "text": strategy_to_text}[fmt](obj)
    elif isinstance(obj, CensusReport):
        if fmt == "json":
            return obj.to_jsonl()
        if fmt == "text":
            return obj.to_text()
    raise UnsupportedExport(f"cannot export {type(obj).__name__} as {fmt}")

"""Census over graph corpora, checking obstruction-freeness, complete
decomposability and the solver verdict against each other."""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .bijoin import is_completely_decomposable
from .errors import BudgetExceeded, FlipwidthError
from .game import solve, verify_strategy
from .graph import INF, Graph, Radius, emit_graph6, enumerate_graphs, format_radius, parse_graph6, parse_radius
from .obstructions import is_obstruction_free
from .strategy import synthesize_strategy

log = logging.getLogger(__name__)

SOLVER_VERSION = "1"

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_SKIPPED = 3


@dataclass
class CensusRecord:
    graph6: str
    n: int
    radius: str
    width: int
    status: str = "ok"  # or "skipped"
    reason: str | None = None
    obstruction_free: bool | None = None
    obstruction: str | None = None
    completely_decomposable: bool | None = None
    decomposable_by_subgraphs: bool | None = None
    flipper_wins: bool | None = None
    strategy_verified: bool | None = None
    max_rounds: int | None = None
    consistent: bool | None = None
    solver_version: str = SOLVER_VERSION

    @property
    def key(self) -> tuple:
        return (self.graph6, self.radius, self.width, self.solver_version)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> CensusRecord:
        return cls(**json.loads(line))


def _is_trivial_graph(g: Graph) -> bool:
    return g.num_edges in (0, g.n * (g.n - 1) // 2)


def expected_consistent(rec: CensusRecord, r: Radius, k: int) -> bool:
    """What the characterization predicts, given everything computed for one graph."""
    of = rec.obstruction_free
    ok = of == rec.completely_decomposable
    if rec.decomposable_by_subgraphs is not None:
        ok = ok and rec.decomposable_by_subgraphs == of
    if of:
        ok = ok and bool(rec.strategy_verified)
    if k == 1:
        ok = ok and rec.flipper_wins == _is_trivial_graph(parse_graph6(rec.graph6))
    elif k == 2 and r != 1:
        ok = ok and rec.flipper_wins == of
    elif of:
        # obstruction-free graphs have width at most 2 at every radius
        ok = ok and bool(rec.flipper_wins)
    return ok


def census_record(g: Graph, r: Radius, k: int) -> CensusRecord:
    rec = CensusRecord(emit_graph6(g), g.n, format_radius(r), k)
    try:
        of, witness = is_obstruction_free(g)
        rec.obstruction_free = of
        rec.obstruction = witness[0].value if witness else None
        dec = is_completely_decomposable(g)
        rec.completely_decomposable = dec.by_tree
        rec.decomposable_by_subgraphs = dec.by_subgraphs
        rec.flipper_wins = solve(g, k, r).flipper_wins
        if of:
            result = verify_strategy(g, INF, synthesize_strategy(g), width=2)
            rec.strategy_verified = result.ok
            rec.max_rounds = result.max_rounds
    except BudgetExceeded as exc:
        rec.status = "skipped"
        rec.reason = str(exc)
        return rec
    except FlipwidthError as exc:
        rec.reason = f"{type(exc).__name__}: {exc}"
        rec.consistent = False
        return rec
    rec.consistent = expected_consistent(rec, r, k)
    return rec


def _record_from_g6(args) -> CensusRecord:
    g6, r, k = args
    return census_record(parse_graph6(g6), parse_radius(r), k)


@dataclass
class CensusReport:
    records: list[CensusRecord]
    radius: str
    width: int
    summary: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.summary:
            self.summary = summarize(self.records)

    @property
    def exit_code(self) -> int:
        if self.summary["inconsistent"]:
            return EXIT_INCONSISTENT
        if self.summary["skipped"]:
            return EXIT_SKIPPED
        return EXIT_OK

    def to_jsonl(self) -> str:
        return "".join(rec.to_json() + "\n" for rec in self.records)

    def to_text(self) -> str:
        s = self.summary
        lines = [
            f"census r={self.radius} k={self.width}: {s['total']} graphs, "
            f"{s['obstruction_free']} obstruction-free, {s['flipper_loses']} with flipper losing, "
            f"{s['inconsistent']} inconsistent, {s['skipped']} skipped"
        ]
        for rec in self.records:
            if rec.status == "skipped":
                lines.append(f"  {rec.graph6}: skipped ({rec.reason})")
            elif not rec.consistent:
                lines.append(f"  {rec.graph6}: INCONSISTENT {rec.to_json()}")
        return "\n".join(lines) + "\n"


def summarize(records: list[CensusRecord]) -> dict:
    ok = [r for r in records if r.status == "ok"]
    return {
        "total": len(records),
        "skipped": sum(r.status == "skipped" for r in records),
        "inconsistent": sum(r.consistent is False for r in ok),
        "obstruction_free": sum(bool(r.obstruction_free) for r in ok),
        "flipper_loses": sum(r.flipper_wins is False for r in ok),
        "max_rounds": max((r.max_rounds or 0 for r in ok), default=0),
    }


def load_cache(path: str | os.PathLike) -> dict[tuple, CensusRecord]:
    cache = {}
    if not os.path.exists(path):
        return cache
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rec = CensusRecord.from_json(line)
                cache[rec.key] = rec
    return cache


def run_census(
    graphs: Iterable[Graph],
    r: Radius,
    k: int = 2,
    jobs: int = 1,
    cache: str | os.PathLike | None = None,
) -> CensusReport:
    """One record per graph (duplicates by graph6 collapse), sorted by graph6."""
    rlabel = format_radius(r)
    todo = sorted({emit_graph6(g) for g in graphs})
    cached = load_cache(cache) if cache else {}
    records: dict[str, CensusRecord] = {}
    missing = []
    for g6 in todo:
        hit = cached.get((g6, rlabel, k, SOLVER_VERSION))
        if hit is not None:
            records[g6] = hit
        else:
            missing.append(g6)
    log.info("census: %d graphs, %d cached", len(todo), len(todo) - len(missing))
    args = [(g6, rlabel, k) for g6 in missing]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            fresh = list(pool.map(_record_from_g6, args, chunksize=16))
    else:
        fresh = [_record_from_g6(a) for a in args]
    for rec in fresh:
        records[rec.graph6] = rec
    if cache and fresh:
        with open(cache, "a", encoding="utf-8", newline="\n") as fh:
            for rec in fresh:
                fh.write(rec.to_json() + "\n")
    return CensusReport([records[g6] for g6 in todo], rlabel, k)


def generated(n: int, min_n: int | None = None) -> list[Graph]:
    lo = n if min_n is None else min_n
    return [g for m in range(lo, n + 1) for g in enumerate_graphs(m, dedupe=True)]


def read_corpus(path: str | os.PathLike) -> list[Graph]:
    out = []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line == ">>graph6<<":
                continue
            try:
                out.append(parse_graph6(line))
            except FlipwidthError as exc:
                raise FlipwidthError(f"{path}:{lineno}: {exc}") from exc
    return out

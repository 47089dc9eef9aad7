import io
import json

import pytest

from flipwidth import cli
from flipwidth.bijoin import build_decomposition
from flipwidth.census import (
    EXIT_INCONSISTENT,
    EXIT_OK,
    EXIT_SKIPPED,
    SOLVER_VERSION,
    CensusRecord,
    CensusReport,
    expected_consistent,
    generated,
    read_corpus,
    run_census,
)
from flipwidth.errors import FlipwidthError
from flipwidth.export import UnsupportedExport, export
from flipwidth.game import solve
from flipwidth.graph import INF, complete, cycle, edgeless, emit_graph6, parse_graph6, path
from flipwidth.obstructions import ObstructionKind, identify
from flipwidth.play import play
from flipwidth.strategy import synthesize_strategy


# ------------------------------------------------------------------ census

def test_census_four_vertices():
    report = run_census(generated(4), INF, 2)
    assert report.summary["total"] == 11
    assert report.summary["inconsistent"] == 0
    assert all(r.flipper_wins for r in report.records)
    assert report.exit_code == EXIT_OK


def test_census_five_vertices_radius_two():
    report = run_census(generated(5), 2, 2)
    losers = [identify(parse_graph6(r.graph6)) for r in report.records if not r.flipper_wins]
    assert sorted(k.value for k in losers) == sorted(k.value for k in ObstructionKind)
    assert report.summary["flipper_loses"] == 4
    assert report.summary["inconsistent"] == 0


def test_census_jsonl_is_deterministic(tmp_path):
    graphs = generated(5, min_n=1)
    a = run_census(graphs, INF, 2).to_jsonl()
    b = run_census(list(reversed(graphs)), INF, 2).to_jsonl()
    assert a == b
    lines = a.splitlines()
    assert [json.loads(x)["graph6"] for x in lines] == sorted(json.loads(x)["graph6"] for x in lines)
    assert len(lines) == 1 + 2 + 4 + 11 + 34


def test_census_parallel_matches_serial():
    graphs = generated(5)
    assert run_census(graphs, 2, 2, jobs=2).to_jsonl() == run_census(graphs, 2, 2).to_jsonl()


def test_cache_coherence(tmp_path):
    cache = tmp_path / "cache.jsonl"
    graphs = [cycle(5), path(4)]
    first = run_census(graphs, 2, 2, cache=cache)
    assert len(cache.read_text().splitlines()) == 2
    # tamper with a cached record; a matching run must return it untouched
    lines = [json.loads(x) for x in cache.read_text().splitlines()]
    lines[0]["reason"] = "from cache"
    stale = dict(lines[1], solver_version="0", reason="stale version")
    cache.write_text("".join(json.dumps(x) + "\n" for x in lines + [stale]))
    again = run_census(graphs, 2, 2, cache=cache)
    assert any(r.reason == "from cache" for r in again.records)
    assert not any(r.reason == "stale version" for r in again.records)
    other_radius = run_census(graphs, INF, 2, cache=cache)
    assert not any(r.reason for r in other_radius.records)
    assert first.to_jsonl() != again.to_jsonl()


def test_skipped_records_and_exit_code(tmp_path):
    corpus = tmp_path / "big.g6"
    corpus.write_text(">>graph6<<\n" + emit_graph6(edgeless(12)) + "\n" + emit_graph6(path(3)) + "\n")
    report = run_census(read_corpus(corpus), INF, 3)
    skipped = [r for r in report.records if r.status == "skipped"]
    assert len(skipped) == 1 and "refusing" in skipped[0].reason
    assert report.exit_code == EXIT_SKIPPED


def test_inconsistency_exit_code():
    rec = CensusRecord("Dhc", 5, "2", 2, obstruction_free=False, completely_decomposable=False,
                       decomposable_by_subgraphs=False, flipper_wins=True)
    assert not expected_consistent(rec, 2, 2)
    rec.consistent = False
    report = CensusReport([rec], "2", 2)
    assert report.exit_code == EXIT_INCONSISTENT
    assert "INCONSISTENT" in report.to_text()


def test_record_json_round_trip():
    rec = run_census([cycle(6)], INF, 2).records[0]
    assert CensusRecord.from_json(rec.to_json()) == rec
    assert rec.solver_version == SOLVER_VERSION
    assert rec.strategy_verified and rec.consistent


def test_read_corpus_reports_line(tmp_path):
    bad = tmp_path / "bad.g6"
    bad.write_text("Dhc\nD~z\n")
    with pytest.raises(FlipwidthError, match=":2:"):
        read_corpus(bad)


# ------------------------------------------------------------------ export

def test_export_tree_dot_k4():
    dot = export(build_decomposition(complete(4)), "dot")
    assert dot.startswith("graph decomposition {")
    assert dot.count("shape=circle") == 4
    assert dot.count('label="complete"') == 1
    assert "n0" in dot and "n4" in dot


def test_export_verdict_json():
    doc = json.loads(export(solve(complete(3), 1, 2), "json"))
    assert doc["flipper_wins"] is True
    assert list(doc) == sorted(doc) == ["flipper_wins", "graph6", "k", "r", "ranks", "strategy"]
    assert doc["r"] == "2" and doc["graph6"] == "Bw"
    assert json.loads(export(solve(cycle(5), 2, INF), "json"))["r"] == "inf"


def test_export_strategy_formats():
    strat = synthesize_strategy(path(4))
    doc = json.loads(export(strat, "json"))
    assert doc["nodes"][0]["id"] == "start"
    assert any(e["to"] == "caught" for e in doc["edges"])
    assert export(strat, "dot").startswith("digraph strategy {")
    assert "width-2 strategy" in export(strat, "text")


def test_export_census_jsonl():
    report = run_census([cycle(5), path(4)], 2, 2)
    text = export(report, "json")
    assert [json.loads(x)["graph6"] for x in text.splitlines()] == sorted([emit_graph6(cycle(5)), "Ch"])


def test_export_rejects_unsupported():
    with pytest.raises(UnsupportedExport):
        export(solve(complete(3), 1, 2), "dot")
    with pytest.raises(UnsupportedExport):
        export(run_census([path(3)], 2, 2), "dot")
    with pytest.raises(UnsupportedExport):
        export(object(), "json")


def test_exports_are_deterministic():
    a = export(build_decomposition(cycle(6)), "json")
    b = export(build_decomposition(cycle(6)), "json")
    assert a == b and a.endswith("\n") and "\r" not in a


# -------------------------------------------------------------------- play

def _session(g, r, k, role, lines):
    out = io.StringIO()
    result = play(g, r, k, role, io.StringIO("".join(x + "\n" for x in lines)), out)
    return result, out.getvalue()


@pytest.mark.parametrize("role", ["runner", "flipper"])
def test_play_edgeless_caught_in_round_one(role):
    lines = ["1", "1"] if role == "runner" else ["parts=[{0,1,2}] pairs=[]"]
    result, text = _session(edgeless(3), 1, 1, role, lines)
    assert result == "caught"
    assert "caught in round 1" in text


def test_play_machine_runner_survives_c5():
    lines = ["parts=[{0,1},{2,3,4}] pairs=[(0,1)]", "parts=[{0},{1,2,3,4}] pairs=[(0,1)]"] * 30
    result, text = _session(ObstructionKind.C5.graph, 2, 2, "flipper", lines)
    assert result == "survived"
    assert "caught" not in text


def test_play_rejects_illegal_moves():
    # path 0-1-2-3, radius 1: from 0 the legal moves are 0 and 1
    result, text = _session(path(4), 1, 2, "runner", ["0", "3", "1", "1", "1", "1", "1", "1"])
    assert "illegal move; legal: [0, 1]" in text


def test_play_rejects_bad_flip_text():
    result, text = _session(path(4), INF, 2, "flipper", ["nonsense", "parts=[{0,1},{2},{3}] pairs=[]"])
    assert text.count("rejected") == 2
    assert result == "quit"


# --------------------------------------------------------------------- cli

def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_solve_and_flipwidth(capsys):
    code, out, _ = run(["solve", "C5", "--radius", "2"], capsys)
    assert code == 0 and "runner wins" in out
    code, out, _ = run(["flipwidth", "C6"], capsys)
    assert out.strip().endswith("= 2")
    code, out, _ = run(["solve", "K3", "--width", "1", "--radius", "2", "--format", "json"], capsys)
    assert json.loads(out)["flipper_wins"] is True


def test_cli_names_and_graph6(capsys):
    for name in ("gem", "co-gem", "cogem", "bull", "C5", "D~{", "P4", "E3"):
        code, _, _ = run(["obstructions", name], capsys)
        assert code == 0


def test_cli_obstructions_json(capsys):
    code, out, _ = run(["obstructions", "bull", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["obstruction_free"] is False and doc["witness"]["kind"] == "bull"
    code, out, _ = run(["obstructions", "--hertz"], capsys)
    assert len(out.splitlines()) == 60


def test_cli_decompose_and_synthesize(capsys):
    code, out, _ = run(["decompose", "K4", "--format", "dot"], capsys)
    assert code == 0 and 'label="complete"' in out
    code, out, _ = run(["synthesize", "C6", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["graph6"] == emit_graph6(cycle(6))
    code, _, err = run(["synthesize", "C5"], capsys)
    assert code == 2 and "C5" in err


def test_cli_verify(capsys):
    assert run(["verify", "C6"], capsys)[0] == 0
    assert run(["verify", "C6", "--strategy", "solver"], capsys)[0] == 0
    assert run(["verify", "co-gem", "--strategy", "script", "--radius", "1"], capsys)[0] == 0
    code, out, _ = run(["verify", "co-gem", "--strategy", "script", "--radius", "2"], capsys)
    assert code == 1 and "FAILED" in out
    code, out, _ = run(["verify", "co-gem", "--strategy", "script", "--radius", "2", "--format", "json"],
                       capsys)
    assert json.loads(out)["ok"] is False


def test_cli_census(capsys, tmp_path):
    cache = tmp_path / "c.jsonl"
    code, out, _ = run(["census", "--n", "4", "--cache", str(cache)], capsys)
    assert code == 0 and "11 graphs" in out and cache.exists()
    code, out, err = run(["census", "--n", "4", "--format", "json"], capsys)
    assert len(out.splitlines()) == 11 and json.loads(err)["total"] == 11
    corpus = tmp_path / "in.g6"
    corpus.write_text("Dhc\nCh\n")
    code, out, _ = run(["census", "--corpus", str(corpus), "--radius", "2"], capsys)
    assert code == 0 and "2 graphs" in out


def test_cli_lemmas(capsys):
    code, out, _ = run(["lemmas", "--format", "json"], capsys)
    docs = [json.loads(x) for x in out.splitlines()]
    assert [len(d["hits"]) for d in docs] == [8, 4]


def test_cli_usage_errors(capsys):
    assert run(["solve", "D~z"], capsys)[0] == 2
    assert run(["census"], capsys)[0] == 2
    assert run(["verify", "C5", "--strategy", "script"], capsys)[0] == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["solve", "C5", "--radius", "0"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["solve", "C5", "--format", "dot"])
    assert info.value.code == 2

"""CLI behavior: fixtures round-trip, generation determinism, validation
exit codes, plan/report artifacts."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from inaut.cli import main
from inaut.fixtures import GOLDEN_CONJUNCTION


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("fx")
    result = CliRunner().invoke(main, ["fixtures", "--out-dir", str(out)])
    assert result.exit_code == 0, result.output
    return out


def _world_args(fx: Path) -> list[str]:
    return ["--kb", str(fx / "kb.json"), "--doc", str(fx / "doc.json"),
            "--areas", str(fx / "areas.json"), "--weights", str(fx / "weights.json")]


def test_fixtures_writes_all_files(fixture_dir):
    for name in ("kb.json", "doc.json", "areas.json", "weights.json",
                 "corpus.txt", "service.json"):
        assert (fixture_dir / name).exists()


def test_generate_to_stdout(fixture_dir):
    result = CliRunner().invoke(main, ["generate", *_world_args(fixture_dir)])
    assert result.exit_code == 0, result.output
    assert GOLDEN_CONJUNCTION in result.output
    assert "2.2.4 Port de Banyuls-sur-Mer" in result.output


def test_generate_byte_identical(fixture_dir, tmp_path):
    out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
    for out in (out1, out2):
        result = CliRunner().invoke(
            main, ["generate", *_world_args(fixture_dir), "--out", str(out)])
        assert result.exit_code == 0, result.output
    assert out1.read_bytes() == out2.read_bytes()


def test_generate_missing_kb_exits_2(fixture_dir):
    args = _world_args(fixture_dir)
    args[1] = str(fixture_dir / "absent.json")
    result = CliRunner().invoke(main, ["generate", *args])
    assert result.exit_code == 2
    assert "not found" in result.output


def test_generate_emit_plan(fixture_dir, tmp_path):
    plan_path = tmp_path / "plan.json"
    result = CliRunner().invoke(main, [
        "generate", *_world_args(fixture_dir), "--out", str(tmp_path / "doc.txt"),
        "--emit-plan", str(plan_path)])
    assert result.exit_code == 0, result.output
    plans = json.loads(plan_path.read_text(encoding="utf-8"))
    assert plans["2.2.4.1"]["components"][0]["start_node"] == "baie-de-banyuls"


def test_generate_html(fixture_dir):
    result = CliRunner().invoke(main, ["generate", *_world_args(fixture_dir),
                                       "--format", "html"])
    assert result.exit_code == 0
    assert 'data-instance="baie-de-banyuls"' in result.output


def test_validate_corpus_ok(fixture_dir):
    result = CliRunner().invoke(main, [
        "validate", "--kb", str(fixture_dir / "kb.json"), str(fixture_dir / "corpus.txt")])
    assert result.exit_code == 0, result.output


def test_validate_bad_sentence_exit_1(fixture_dir, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("La [baie de Banyulz] est limitée par le [cap d'Osne] au NW.\n",
                   encoding="utf-8")
    result = CliRunner().invoke(main, [
        "validate", "--kb", str(fixture_dir / "kb.json"), str(bad)])
    assert result.exit_code == 1
    assert "baie de Banyuls" in result.output  # hint printed


def test_validate_json_diagnostics(fixture_dir, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("Le [cap d'Osne] limite la [baie de Banyulz] au NW.\n", encoding="utf-8")
    result = CliRunner().invoke(main, [
        "validate", "--kb", str(fixture_dir / "kb.json"), "--json", str(bad)])
    assert result.exit_code == 1
    line = [l for l in result.output.splitlines() if l.startswith("{")][0]
    payload = json.loads(line)
    assert payload["code"] == "unknown-lexeme" and payload["hints"]


def test_validate_no_files_warns(fixture_dir):
    result = CliRunner().invoke(main, ["validate", "--kb", str(fixture_dir / "kb.json")])
    assert result.exit_code == 0
    assert "no files" in result.output


def test_plan_single_leaf(fixture_dir):
    result = CliRunner().invoke(main, ["plan", *_world_args(fixture_dir),
                                       "--leaf", "2.2.4.1"])
    assert result.exit_code == 0, result.output
    plans = json.loads(result.output)
    seq = plans["2.2.4.1"]["components"][0]["relation_sequence"]
    assert seq[0] == ["r1", "baie-de-banyuls"]


def test_report_writes_map_and_tsv(fixture_dir, tmp_path):
    out = tmp_path / "report"
    result = CliRunner().invoke(main, ["report", *_world_args(fixture_dir),
                                       "--out-dir", str(out)])
    assert result.exit_code == 0, result.output
    png = (out / "map.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
    tsv = (out / "components.tsv").read_text(encoding="utf-8")
    header, first = tsv.splitlines()[:2]
    assert header.split("\t") == ["rank", "tag", "start_node", "instances",
                                  "relations", "cumulated_area"]
    assert first.split("\t")[1] == "Généralités"
    assert first.split("\t")[2] == "baie-de-banyuls"


def test_kb_export_dot(fixture_dir):
    result = CliRunner().invoke(main, ["kb", "export", "--kb",
                                       str(fixture_dir / "kb.json"), "--format", "dot"])
    assert result.exit_code == 0
    assert result.output.startswith("graph kb {")


def test_kb_import_normalizes(fixture_dir, tmp_path):
    out = tmp_path / "norm.json"
    result = CliRunner().invoke(main, ["kb", "import", str(fixture_dir / "kb.json"),
                                       "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_bytes() == (fixture_dir / "kb.json").read_bytes()

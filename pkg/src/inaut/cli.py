"""Command line: generate volumes, validate corpora, plan and report,
manage fixtures and KB files, run the service.

Exit codes: 0 success, 1 validation failure, 2 configuration or I/O error.
Every data-file option honors an INAUT_* environment variable.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import fixtures as fx
from .doc import guiding_path, load_doc_tree
from .errors import InautError
from .geometry import areas_from_geojson, areas_to_geojson, build_area_graph
from .kb import full_graph, load as load_kb, persist as persist_kb, validate_kb
from .pipeline import Generator, plan_to_json
from .semantics import validate_segment
from .service import ServiceConfig, build_state, create_app
from .weights import WeightConfig, load_weights, save_weights

EXIT_VALIDATION = 1
EXIT_CONFIG = 2


def _fail(message: str, code: int = EXIT_CONFIG):
    click.echo(message, err=True)
    sys.exit(code)


def _load_world(kb_path: str, doc_path: str, areas_path: str, weights_path: str | None):
    try:
        kb = load_kb(Path(kb_path).read_bytes())
        doc = load_doc_tree(Path(doc_path).read_bytes())
        areas = areas_from_geojson(json.loads(Path(areas_path).read_text(encoding="utf-8")))
        weights = (load_weights(Path(weights_path).read_bytes())
                   if weights_path else WeightConfig())
    except FileNotFoundError as exc:
        _fail(f"file not found: {exc.filename}")
    except (InautError, json.JSONDecodeError, OSError) as exc:
        _fail(f"cannot load inputs: {exc}")
    problems = validate_kb(kb)
    if problems:
        for d in problems:
            click.echo(f"kb invalid: {d.entity}: {d.rule}: {d.message}", err=True)
        sys.exit(EXIT_CONFIG)
    return kb, doc, build_area_graph(areas), weights


_kb_opt = click.option("--kb", "kb_path", required=True, envvar="INAUT_KB",
                       help="knowledge base JSON file")
_doc_opt = click.option("--doc", "doc_path", required=True, envvar="INAUT_DOC",
                        help="document tree JSON file")
_areas_opt = click.option("--areas", "areas_path", required=True, envvar="INAUT_AREAS",
                          help="area polygons GeoJSON file")
_weights_opt = click.option("--weights", "weights_path", default=None, envvar="INAUT_WEIGHTS",
                            help="weights JSON file (defaults built in)")


@click.group()
def main():
    """Coast-pilot toolkit: parse, validate and generate."""


@main.command()
@_kb_opt
@_doc_opt
@_areas_opt
@_weights_opt
@click.option("--out", "out_path", default="-", help="output file (default stdout)")
@click.option("--format", "fmt", type=click.Choice(["text", "html"]), default="text")
@click.option("--emit-plan", "plan_path", default=None,
              help="also write the generation plan as JSON")
def generate(kb_path, doc_path, areas_path, weights_path, out_path, fmt, plan_path):
    """Generate the full volume document."""
    kb, doc, graph, weights = _load_world(kb_path, doc_path, areas_path, weights_path)
    generator = Generator(kb, doc, graph, weights)
    try:
        document = generator.volume_text(fmt)
    except InautError as exc:
        _fail(f"generation failed: {exc}")
    if plan_path:
        plans = {leaf.id: json.loads(plan_to_json(generator.plan_for_leaf(leaf.id)))
                 for leaf in doc.leaves()}
        Path(plan_path).write_text(
            json.dumps(plans, ensure_ascii=False, sort_keys=True, indent=2), encoding="utf-8")
    if out_path == "-":
        click.echo(document, nl=False)
    else:
        Path(out_path).write_text(document, encoding="utf-8")


@main.command()
@_kb_opt
@click.option("--json", "as_json", is_flag=True, help="one JSON diagnostic per line")
@click.argument("files", nargs=-1, type=click.Path())
def validate(kb_path, as_json, files):
    """Validate controlled-language segment files; exit 1 on any diagnostic."""
    try:
        kb = load_kb(Path(kb_path).read_bytes())
    except (InautError, OSError) as exc:
        _fail(f"cannot load KB: {exc}")
    if not files:
        click.echo("warning: no files to validate", err=True)
        sys.exit(0)
    failed = False
    for name in files:
        try:
            text = Path(name).read_text(encoding="utf-8")
        except OSError as exc:
            _fail(f"cannot read {name}: {exc}")
        diagnostics = validate_segment(text, kb)
        for d in diagnostics:
            failed = True
            if as_json:
                click.echo(json.dumps({"file": name, **d.to_dict()},
                                      ensure_ascii=False, sort_keys=True), err=True)
            else:
                hint = f" (did you mean: {', '.join(d.hints)}?)" if d.hints else ""
                click.echo(f"{name}:{d.span[0]}-{d.span[1]}: {d.code}: {d.message}{hint}",
                           err=True)
        if not diagnostics:
            click.echo(f"{name}: ok")
    sys.exit(EXIT_VALIDATION if failed else 0)


@main.command()
@_kb_opt
@_doc_opt
@_areas_opt
@_weights_opt
@click.option("--leaf", "leaf_id", default=None, help="plan a single leaf (default: all)")
@click.option("--out", "out_path", default="-")
def plan(kb_path, doc_path, areas_path, weights_path, leaf_id, out_path):
    """Emit the generation plan (components, start nodes, relation order)."""
    kb, doc, graph, weights = _load_world(kb_path, doc_path, areas_path, weights_path)
    generator = Generator(kb, doc, graph, weights)
    leaves = [doc.node(leaf_id)] if leaf_id else doc.leaves()
    try:
        plans = {leaf.id: json.loads(plan_to_json(generator.plan_for_leaf(leaf.id)))
                 for leaf in leaves}
    except InautError as exc:
        _fail(f"planning failed: {exc}")
    blob = json.dumps(plans, ensure_ascii=False, sort_keys=True, indent=2)
    if out_path == "-":
        click.echo(blob)
    else:
        Path(out_path).write_text(blob, encoding="utf-8")


@main.command()
@_kb_opt
@_doc_opt
@_areas_opt
@_weights_opt
@click.option("--out-dir", "out_dir", required=True, type=click.Path())
@click.option("--leaf", "leaf_id", default=None,
              help="component table for one leaf (default: first prose leaf)")
def report(kb_path, doc_path, areas_path, weights_path, out_dir, leaf_id):
    """Write map.png (areas + guiding path) and components.tsv."""
    from .report import components_tsv, render_map

    kb, doc, graph, weights = _load_world(kb_path, doc_path, areas_path, weights_path)
    generator = Generator(kb, doc, graph, weights)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    leaves = doc.leaves()
    target = leaf_id or next((l.id for l in leaves if l.leaf_type), leaves[0].id)
    try:
        path = guiding_path(doc, graph)
        component_plan = generator.plan_for_leaf(target)
    except InautError as exc:
        _fail(f"report failed: {exc}")
    render_map(graph, path, out / "map.png", kb, title=doc.meta.title)
    (out / "components.tsv").write_text(components_tsv(component_plan, kb, graph),
                                        encoding="utf-8")
    click.echo(f"wrote {out / 'map.png'} and {out / 'components.tsv'}")


@main.command()
@_kb_opt
@_doc_opt
@_areas_opt
@_weights_opt
@click.option("--config", "config_path", default=None, envvar="INAUT_CONFIG",
              help="service config JSON (tokens, threshold, data dir)")
@click.option("--host", default="127.0.0.1", envvar="INAUT_LISTEN")
@click.option("--port", default=8000, type=int, envvar="INAUT_PORT")
def serve(kb_path, doc_path, areas_path, weights_path, config_path, host, port):
    """Run the HTTP service."""
    import uvicorn

    _, _, _, weights = _load_world(kb_path, doc_path, areas_path, weights_path)
    try:
        config = ServiceConfig.from_file(Path(config_path) if config_path else None)
        state = build_state(Path(kb_path), Path(doc_path), Path(areas_path), weights, config)
    except (InautError, OSError, json.JSONDecodeError) as exc:
        _fail(f"cannot start service: {exc}")
    uvicorn.run(create_app(state), host=host, port=port, log_level="warning")


@main.group()
def kb():
    """Knowledge-base file utilities."""


@kb.command("import")
@click.argument("source", type=click.Path())
@click.option("--out", "out_path", required=True)
def kb_import(source, out_path):
    """Validate and normalize a KB file (stable key order)."""
    try:
        knowledge = load_kb(Path(source).read_bytes())
    except (InautError, OSError) as exc:
        _fail(f"cannot load {source}: {exc}")
    problems = validate_kb(knowledge)
    if problems:
        for d in problems:
            click.echo(f"{d.entity}: {d.rule}: {d.message}", err=True)
        sys.exit(EXIT_VALIDATION)
    Path(out_path).write_bytes(persist_kb(knowledge))
    click.echo(f"imported {len(knowledge.instances)} instances, "
               f"{len(knowledge.relation_instances)} facts")


@kb.command("export")
@_kb_opt
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json")
@click.option("--out", "out_path", default="-")
def kb_export(kb_path, fmt, out_path):
    """Dump the KB as normalized JSON or as a DOT graph."""
    try:
        knowledge = load_kb(Path(kb_path).read_bytes())
    except (InautError, OSError) as exc:
        _fail(f"cannot load KB: {exc}")
    blob = (persist_kb(knowledge).decode("utf-8") if fmt == "json"
            else full_graph(knowledge).to_dot())
    if out_path == "-":
        click.echo(blob, nl=False)
    else:
        Path(out_path).write_text(blob, encoding="utf-8")


@main.command()
@click.option("--out-dir", "out_dir", required=True, type=click.Path())
def fixtures(out_dir):
    """Write the Banyuls example data set (KB, document, areas, weights,
    corpus, service config)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    from .doc import save_doc_tree

    (out / "kb.json").write_bytes(persist_kb(fx.banyuls_kb()))
    (out / "doc.json").write_bytes(save_doc_tree(fx.banyuls_doc()))
    (out / "areas.json").write_text(
        json.dumps(areas_to_geojson(fx.banyuls_areas()), ensure_ascii=False,
                   sort_keys=True, indent=2), encoding="utf-8")
    (out / "weights.json").write_bytes(save_weights(WeightConfig()))
    (out / "corpus.txt").write_text("\n".join(fx.CORPUS) + "\n", encoding="utf-8")
    (out / "service.json").write_text(json.dumps({
        "auto_merge_threshold": 2,
        "volume_name": "default",
        "tokens": {
            "token-admiral": {"author": "amiral", "trust_level": 3, "moderator": True},
            "token-deckhand": {"author": "matelot", "trust_level": 0},
        },
    }, ensure_ascii=False, sort_keys=True, indent=2), encoding="utf-8")
    click.echo(f"fixture data written to {out}")


if __name__ == "__main__":
    main()

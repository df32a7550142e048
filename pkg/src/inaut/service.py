"""HTTP service: segment validation, collaborative contributions with
trust levels and a moderation queue, zone queries, and full document
generation.

Snapshots are immutable; a single lock serializes merges, and every
accepted contribution is appended to a JSONL log that is replayed over
the latest KB snapshot on restart.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, field, asdict
from pathlib import Path

from fastapi import FastAPI, Header, Request
from fastapi.responses import JSONResponse

from .doc import DocTree, load_doc_tree
from .errors import DegeneratePolygon, InautError
from .geometry import AreaGraph, intersection_area, polygon_from_geojson
from .kb import KnowledgeBase, add_relation_instance, load as load_kb, persist as persist_kb
from .lexicon import Lexicon
from .pipeline import Generator
from .semantics import semantify, validate_segment
from .parser import parse as parse_sentence
from .tokenizer import split_segments, tokenize
from .weights import WeightConfig

MAX_SEGMENT_BYTES = 64 * 1024
MERGE_LOCK_TIMEOUT = 10.0  # seconds before a contribution gives up with 409


@dataclass(frozen=True)
class AuthRecord:
    author: str
    trust_level: int = 0
    moderator: bool = False


@dataclass
class ServiceConfig:
    auto_merge_threshold: int = 2
    tokens: dict[str, AuthRecord] = field(default_factory=dict)
    data_dir: Path | None = None
    snapshot_every: int = 5
    volume_name: str = "default"

    @classmethod
    def from_file(cls, path: Path | None = None, env: dict | None = None) -> "ServiceConfig":
        """File config with environment overrides (INAUT_THRESHOLD, INAUT_DATA_DIR)."""
        env = env if env is not None else dict(os.environ)
        doc = {}
        if path is not None:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        tokens = {
            tok: AuthRecord(rec["author"], int(rec.get("trust_level", 0)),
                            bool(rec.get("moderator", False)))
            for tok, rec in doc.get("tokens", {}).items()
        }
        threshold = int(env.get("INAUT_THRESHOLD", doc.get("auto_merge_threshold", 2)))
        data_dir = env.get("INAUT_DATA_DIR", doc.get("data_dir"))
        return cls(auto_merge_threshold=threshold, tokens=tokens,
                   data_dir=Path(data_dir) if data_dir else None,
                   snapshot_every=int(doc.get("snapshot_every", 5)),
                   volume_name=doc.get("volume_name", "default"))


@dataclass
class Contribution:
    id: str
    author: str
    trust_level: int
    segment: str
    status: str  # pending | merged | rejected
    submitted_at: float
    retroactive: bool = False
    target: str | None = None
    snapshot_version: int | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


class ServiceState:
    """Mutable service core, independent from HTTP so it can be tested and
    replayed directly."""

    def __init__(self, kb: KnowledgeBase, doc: DocTree, area_graph: AreaGraph,
                 weights: WeightConfig, config: ServiceConfig):
        self.config = config
        self.doc = doc
        self.area_graph = area_graph
        self.weights = weights
        self.kb = kb
        self.lock = threading.Lock()
        self.contributions: dict[str, Contribution] = {}
        self._counter = 0
        self._log_path = config.data_dir / "contributions.jsonl" if config.data_dir else None
        self._snapshot_path = config.data_dir / "kb-snapshot.json" if config.data_dir else None
        self._log_entries = 0
        if config.data_dir:
            config.data_dir.mkdir(parents=True, exist_ok=True)
            self._replay()

    # -- snapshot access -------------------------------------------------------

    def generator(self, kb: KnowledgeBase | None = None) -> Generator:
        return Generator(kb or self.kb, self.doc, self.area_graph, self.weights)

    def lexicon(self, kb: KnowledgeBase | None = None) -> Lexicon:
        return Lexicon.from_kb(kb or self.kb)

    # -- contributions ----------------------------------------------------------

    def submit(self, segment: str, author: str, trust_level: int,
               target: str | None = None) -> Contribution:
        diagnostics = validate_segment(segment, self.kb)
        if diagnostics:
            raise SegmentInvalid(diagnostics)
        if not self.lock.acquire(timeout=MERGE_LOCK_TIMEOUT):
            raise MergeConflict("merge queue congested, retry later")
        try:
            self._counter += 1
            contribution = Contribution(
                id=f"c{self._counter:06d}", author=author, trust_level=trust_level,
                segment=segment, status="pending", submitted_at=time.time(), target=target)
            if trust_level >= self.config.auto_merge_threshold:
                self._merge_locked(contribution)
            self.contributions[contribution.id] = contribution
            self._append_log({"type": "contribution", **contribution.to_dict()})
        finally:
            self.lock.release()
        return contribution

    def decide(self, contribution_id: str, approve: bool, retroactive: bool = False,
               reason: str | None = None) -> tuple[Contribution, list[str]]:
        with self.lock:
            contribution = self.contributions.get(contribution_id)
            if contribution is None:
                raise LookupError(contribution_id)
            if contribution.status != "pending":
                raise AlreadyDecided(contribution.status)
            regenerated: list[str] = []
            if approve:
                self._merge_locked(contribution)
                contribution.retroactive = retroactive
                if retroactive:
                    regenerated = self._affected_leaves(contribution.segment)
            else:
                contribution.status = "rejected"
                contribution.reason = reason
            self._append_log({"type": "decision", "id": contribution.id,
                              "approve": approve, "retroactive": retroactive,
                              "reason": reason})
        return contribution, regenerated

    def pending(self) -> list[Contribution]:
        return [c for c in self.contributions.values() if c.status == "pending"]

    def _merge_locked(self, contribution: Contribution) -> None:
        kb = self.kb
        lexicon = Lexicon.from_kb(kb)
        for sentence, _ in split_segments(contribution.segment):
            tokens = tokenize(sentence, lexicon)
            if not tokens:
                continue
            delta = semantify(parse_sentence(tokens, lexicon), kb, lexicon)
            kb = add_relation_instance(kb, delta.relation)
        self.kb = kb
        contribution.status = "merged"
        contribution.snapshot_version = kb.version
        self._maybe_snapshot()

    def _affected_leaves(self, segment: str) -> list[str]:
        """Leaves whose content-determination area intersects an entity of
        the contribution; their texts are regenerated eagerly."""
        lexicon = self.lexicon()
        names = {tok.entity_name for sentence, _ in split_segments(segment)
                 for tok in tokenize(sentence, lexicon) if tok.kind == "ENTITY"}
        areas = []
        for inst in self.kb.instances.values():
            if inst.name in names and inst.geo_ref in self.area_graph.area_of:
                areas.append(self.area_graph.area_of[inst.geo_ref])
        generator = self.generator()
        touched = []
        for leaf in self.doc.leaves():
            try:
                node = self.doc.effective_area_node(leaf.id)
            except InautError:
                continue
            leaf_poly = self.area_graph.area_of[node]
            if any(intersection_area(a, leaf_poly) > 0 for a in areas):
                generator.leaf_text(leaf.id)
                touched.append(leaf.id)
        return touched

    # -- persistence --------------------------------------------------------------

    def _append_log(self, entry: dict) -> None:
        if self._log_path is None:
            return
        with open(self._log_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, ensure_ascii=False, sort_keys=True) + "\n")
        self._log_entries += 1

    def _maybe_snapshot(self) -> None:
        if self._snapshot_path is None:
            return
        if self._log_entries % max(self.config.snapshot_every, 1) == 0:
            self._write_snapshot()

    def _write_snapshot(self) -> None:
        payload = {"log_entries": self._log_entries,
                   "kb": json.loads(persist_kb(self.kb).decode("utf-8"))}
        self._snapshot_path.write_text(
            json.dumps(payload, ensure_ascii=False, sort_keys=True), encoding="utf-8")

    def _replay(self) -> None:
        start_from = 0
        if self._snapshot_path and self._snapshot_path.exists():
            payload = json.loads(self._snapshot_path.read_text(encoding="utf-8"))
            self.kb = load_kb(json.dumps(payload["kb"]).encode("utf-8"))
            start_from = int(payload.get("log_entries", 0))
        if not (self._log_path and self._log_path.exists()):
            return
        with open(self._log_path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        self._log_entries = len(lines)
        for i, line in enumerate(lines):
            entry = json.loads(line)
            if entry["type"] == "contribution":
                contribution = Contribution(**{k: v for k, v in entry.items() if k != "type"})
                self.contributions[contribution.id] = contribution
                self._counter = max(self._counter, int(contribution.id[1:]))
                if i >= start_from and contribution.status == "merged":
                    contribution.status = "pending"
                    self._merge_locked(contribution)
            elif entry["type"] == "decision":
                contribution = self.contributions.get(entry["id"])
                if contribution is None:
                    continue
                if i >= start_from and entry["approve"] and contribution.status == "pending":
                    self._merge_locked(contribution)
                elif not entry["approve"]:
                    contribution.status = "rejected"
                    contribution.reason = entry.get("reason")


class SegmentInvalid(InautError):
    def __init__(self, diagnostics):
        super().__init__("segment failed validation")
        self.diagnostics = diagnostics


class AlreadyDecided(InautError):
    pass


class MergeConflict(InautError):
    pass


# ---------------------------------------------------------------------------
# HTTP layer
# ---------------------------------------------------------------------------

def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="inaut", docs_url=None, redoc_url=None)

    def auth(header_value: str | None) -> AuthRecord | None:
        if not header_value or not header_value.startswith("Bearer "):
            return None
        return state.config.tokens.get(header_value.removeprefix("Bearer "))

    async def read_json(request: Request) -> dict | None:
        raw = await request.body()
        if len(raw) > MAX_SEGMENT_BYTES:
            return {"__oversized__": True}
        try:
            doc = json.loads(raw)
        except (json.JSONDecodeError, UnicodeDecodeError):
            return None
        return doc if isinstance(doc, dict) else None

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "kb_version": state.kb.version}

    @app.get("/kb/snapshot")
    def kb_snapshot():
        return JSONResponse(json.loads(persist_kb(state.kb).decode("utf-8")))

    @app.post("/validate")
    async def validate(request: Request):
        body = await read_json(request)
        if body and body.get("__oversized__"):
            return JSONResponse({"error": "segment too large"}, status_code=413)
        if body is None or not isinstance(body.get("segment"), str) or not body["segment"]:
            return JSONResponse({"error": "body must be {\"segment\": \"...\"}"},
                                status_code=400)
        kb = state.kb  # one snapshot for the whole request
        diagnostics = validate_segment(body["segment"], kb)
        return {"diagnostics": [d.to_dict() for d in diagnostics]}

    @app.post("/contributions")
    async def contributions(request: Request, authorization: str | None = Header(default=None)):
        body = await read_json(request)
        if body and body.get("__oversized__"):
            return JSONResponse({"error": "segment too large"}, status_code=413)
        if body is None or not isinstance(body.get("segment"), str):
            return JSONResponse({"error": "body must carry a segment"}, status_code=400)
        record = auth(authorization)
        author = (record.author if record else None) or body.get("author") or "anonymous"
        trust = record.trust_level if record else 0
        try:
            contribution = state.submit(body["segment"], author, trust, body.get("target"))
        except SegmentInvalid as exc:
            return JSONResponse(
                {"error": "invalid segment",
                 "diagnostics": [d.to_dict() for d in exc.diagnostics]},
                status_code=422)
        except MergeConflict as exc:
            return JSONResponse({"error": str(exc)}, status_code=409)
        return {"status": contribution.status, "contribution_id": contribution.id,
                "kb_version": contribution.snapshot_version}

    @app.get("/moderation/queue")
    def moderation_queue(authorization: str | None = Header(default=None)):
        record = auth(authorization)
        if record is None or not record.moderator:
            return JSONResponse({"error": "moderator role required"}, status_code=403)
        return {"pending": [c.to_dict() for c in state.pending()]}

    @app.post("/moderation/{contribution_id}/decision")
    async def moderation_decision(contribution_id: str, request: Request,
                                  authorization: str | None = Header(default=None)):
        record = auth(authorization)
        if record is None or not record.moderator:
            return JSONResponse({"error": "moderator role required"}, status_code=403)
        body = await read_json(request) or {}
        decision = body.get("decision")
        if decision not in ("approve", "reject"):
            return JSONResponse({"error": "decision must be approve or reject"}, status_code=400)
        try:
            contribution, regenerated = state.decide(
                contribution_id, decision == "approve",
                bool(body.get("retroactive", False)), body.get("reason"))
        except LookupError:
            return JSONResponse({"error": "unknown contribution"}, status_code=404)
        except AlreadyDecided as exc:
            return JSONResponse({"error": f"already {exc}"}, status_code=409)
        return {"status": contribution.status, "regenerated": regenerated}

    @app.post("/zone-query")
    async def zone_query(request: Request):
        body = await read_json(request)
        if body is None or "polygon" not in body:
            return JSONResponse({"error": "body must carry a GeoJSON polygon"}, status_code=400)
        try:
            zone = polygon_from_geojson(body["polygon"], "zone-query")
        except DegeneratePolygon as exc:
            return JSONResponse({"error": f"invalid polygon: {exc}"}, status_code=400)
        filters = set(body.get("filters") or [])
        known_tags = {rule.tag for rule in state.weights.tag_rules} | {"Généralités"}
        unknown = filters - known_tags
        if unknown:
            return JSONResponse({"error": f"unknown filter tags: {sorted(unknown)}"},
                                status_code=400)
        kb = state.kb
        generator = state.generator(kb)
        sections = generator.zone_query(zone, filters or None, body.get("context"))
        return {"sections": sections, "kb_version": kb.version}

    @app.post("/generate")
    async def generate(request: Request):
        body = await read_json(request) or {}
        volume = body.get("volume", state.config.volume_name)
        if volume not in (state.config.volume_name, state.doc.meta.title):
            return JSONResponse({"error": f"unknown volume {volume!r}"}, status_code=404)
        fmt = body.get("format", "text")
        generator = state.generator()
        return {"volume": volume, "format": fmt, "document": generator.volume_text(fmt)}

    return app


def build_state(kb_path: Path, doc_path: Path, areas_path: Path,
                weights: WeightConfig, config: ServiceConfig) -> ServiceState:
    """Assemble the service core from its four data files."""
    from .geometry import areas_from_geojson, build_area_graph

    kb = load_kb(Path(kb_path).read_bytes())
    doc = load_doc_tree(Path(doc_path).read_bytes())
    areas = areas_from_geojson(json.loads(Path(areas_path).read_text(encoding="utf-8")))
    return ServiceState(kb, doc, build_area_graph(areas), weights, config)

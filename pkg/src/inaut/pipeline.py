"""End-to-end generation: leaf paragraphs, whole volumes, and ad-hoc zone
queries over the same planning pipeline.

The generator caches leaf subgraphs per KB snapshot version; swapping in
a new snapshot naturally invalidates the cache.
"""

from __future__ import annotations

import html as html_lib
import json
import re
from dataclasses import dataclass, field

from .content import components_of, select_subgraph, tag_components
from .doc import DEFAULT_LEAF_TYPE, DocTree, guiding_path
from .errors import NoGeoArea
from .geometry import AreaGraph, GeoPolygon, polygon_to_geojson
from .kb import KbGraph, KnowledgeBase, RelationInstance
from .litinaut import apply_rules, realize_component, render_chain
from .planning import GenerationPlan, plan_components
from .weights import WeightConfig


@dataclass
class Generator:
    kb: KnowledgeBase
    doc: DocTree
    area_graph: AreaGraph
    weights: WeightConfig = field(default_factory=WeightConfig)
    _kappa_cache: dict[tuple[str, int], KbGraph] = field(default_factory=dict, repr=False)

    def kappa(self, leaf_id: str) -> KbGraph:
        """Leaf-to-subgraph link; cached per (leaf, snapshot version)."""
        key = (leaf_id, self.kb.version)
        if key not in self._kappa_cache:
            area_node = self.doc.effective_area_node(leaf_id)
            zone = self.area_graph.area_of.get(area_node)
            if zone is None:
                raise NoGeoArea(f"area node {area_node!r} has no polygon")
            self._kappa_cache[key] = select_subgraph(self.kb, self.area_graph, zone)
        return self._kappa_cache[key]

    def plan_for_leaf(self, leaf_id: str) -> GenerationPlan:
        leaf = self.doc.node(leaf_id)
        subgraph = self.kappa(leaf_id)
        components = components_of(subgraph)
        tagged = tag_components(components, self.weights.tag_rules)
        parent = self.doc.parent(leaf_id)
        parent_title = parent.title if parent else leaf.title
        parent_area = None
        try:
            parent_node = self.doc.effective_area_node(leaf_id)
            parent_area = self.area_graph.area_of[parent_node]
        except NoGeoArea:
            pass
        return plan_components(tagged, guiding_path(self.doc, self.area_graph),
                               self.weights, self.area_graph, parent_title, parent_area)

    def leaf_text(self, leaf_id: str) -> str:
        """LitINAUT paragraph of one prose leaf: the components whose tag
        matches the leaf's type."""
        leaf = self.doc.node(leaf_id)
        leaf_type = leaf.leaf_type or DEFAULT_LEAF_TYPE
        plan = self.plan_for_leaf(leaf_id)
        paragraphs = []
        for component in plan.components:
            if component.tag != leaf_type or not component.relation_sequence:
                continue
            chain = realize_component(component, self.kb)
            chain = apply_rules(chain, leaf_type, self.weights.omission_prefixes)
            paragraphs.append(render_chain(chain))
        return " ".join(p for p in paragraphs if p)

    # -- whole volume ----------------------------------------------------------

    def volume_text(self, fmt: str = "text") -> str:
        lines: list[str] = []
        for node in self.doc.walk():
            if fmt == "html":
                level = min(node.level + 1, 6)
                lines.append(f"<h{level}>{html_lib.escape(_heading(node))}</h{level}>")
            else:
                lines.append(_heading(node))
            if node.is_leaf:
                try:
                    text = self.leaf_text(node.id)
                except NoGeoArea:
                    text = ""  # un-georeferenced leaf: heading only
                if text:
                    lines.append(text_to_html(text, self.kb) if fmt == "html" else text)
        return "\n".join(lines) + "\n"

    # -- zone queries ------------------------------------------------------------

    def zone_query(self, zone: GeoPolygon, filters: set[str] | None = None,
                   context: dict | None = None) -> list[dict]:
        """Sections of LitINAUT text for a user-drawn zone, grouped by tag."""
        subgraph = select_subgraph(self.kb, self.area_graph, zone)
        if context:
            subgraph = _filter_by_context(subgraph, context)
        components = components_of(subgraph)
        tagged = tag_components(components, self.weights.tag_rules)
        # the drawn zone plays the role of the connecting section's area
        plan = plan_components(tagged, guiding_path(self.doc, self.area_graph),
                               self.weights, self.area_graph, parent_area=zone)
        by_tag: dict[str, list] = {}
        for component in plan.components:
            if not component.relation_sequence:
                continue
            if filters and component.tag not in filters:
                continue
            chain = realize_component(component, self.kb)
            chain = apply_rules(chain, component.tag, self.weights.omission_prefixes)
            by_tag.setdefault(component.tag, []).append((component, render_chain(chain)))
        sections = []
        for tag in sorted(by_tag):
            parts = by_tag[tag]
            text = " ".join(t for _, t in parts if t)
            links = []
            seen = set()
            for component, _ in parts:
                for inst in component.graph.georeferenced_instances():
                    if inst.id in seen:
                        continue
                    seen.add(inst.id)
                    links.append(self.entity_link(inst.id))
            sections.append({"tag": tag, "litinaut_text": text, "entity_links": links})
        return sections

    def entity_link(self, instance_id: str) -> dict:
        inst = self.kb.instances[instance_id]
        polygon = None
        if inst.geo_ref and inst.geo_ref in self.area_graph.area_of:
            polygon = polygon_to_geojson(self.area_graph.area_of[inst.geo_ref])
        return {"name": inst.name, "instance_id": inst.id, "polygon": polygon}


def _heading(node) -> str:
    return f"{node.id} {node.title}".strip() if node.level > 0 else node.title


def _filter_by_context(subgraph: KbGraph, context: dict) -> KbGraph:
    """Drop relation instances whose validity predicates reject the query
    context (hour outside [valid_from, valid_to), draught above min_depth)."""
    kb = subgraph.kb
    keep = set()
    for rid in subgraph.relation_ids:
        if _context_allows(kb.relation_instances[rid], context):
            keep.add(rid)
    return KbGraph(kb, subgraph.instance_ids, frozenset(keep))


def _context_allows(ri: RelationInstance, context: dict) -> bool:
    attrs = ri.attributes
    hour = context.get("hour")
    if hour is not None and "valid_from" in attrs and "valid_to" in attrs:
        if not (float(attrs["valid_from"]) <= float(hour) < float(attrs["valid_to"])):
            return False
    draught = context.get("draught")
    if draught is not None and "min_depth" in attrs:
        if float(draught) > float(attrs["min_depth"]):
            return False
    return True


_BRACKET_RE = re.compile(r"\[([^\]]+)\]")


def text_to_html(text: str, kb: KnowledgeBase, area_graph: AreaGraph | None = None) -> str:
    """Bracketed entities become links carrying the instance id (and area
    node when known)."""
    by_name = {inst.name: inst for inst in kb.instances.values()}

    def repl(match: re.Match) -> str:
        name = match.group(1)
        inst = by_name.get(name)
        if inst is None:
            return html_lib.escape(match.group(0))
        area = f' data-area="{html_lib.escape(inst.geo_ref)}"' if inst.geo_ref else ""
        return (f'<a class="entity" data-instance="{html_lib.escape(inst.id)}"{area}>'
                f"{html_lib.escape(name)}</a>")

    out = []
    last = 0
    for m in _BRACKET_RE.finditer(text):
        out.append(html_lib.escape(text[last:m.start()]))
        out.append(repl(m))
        last = m.end()
    out.append(html_lib.escape(text[last:]))
    return "".join(out)


def plan_to_json(plan: GenerationPlan) -> str:
    return json.dumps(plan.to_dict(), ensure_ascii=False, sort_keys=True, indent=2)

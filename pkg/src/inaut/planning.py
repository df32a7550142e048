"""Document structuring: order the connected components along the guiding
path, pick each component's start node, and lay out the relation sequence
with a depth-first walk.

The walk emits all of a node's pending relations (heaviest first, then by
id) before descending into the newly reached nodes, so facts about one
place stay adjacent; voice selection later makes the anchoring node the
subject of its sentence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyComponent
from .french import name_similarity
from .geometry import AreaGraph, GeoPolygon, GuidingPath, barycenter, intersection_area, polygon_area
from .kb import KbGraph, KnowledgeBase, SimpleRelationSchema, ROLE_AGENT, ROLE_PATIENT
from .weights import WeightConfig


@dataclass(frozen=True)
class PlannedComponent:
    graph: KbGraph
    tag: str
    start_node: str | None
    relation_sequence: tuple[tuple[str, str], ...]  # (relation id, anchor instance)

    def to_dict(self) -> dict:
        return {
            "instances": sorted(self.graph.instance_ids),
            "relations": sorted(self.graph.relation_ids),
            "tag": self.tag,
            "start_node": self.start_node,
            "relation_sequence": [list(step) for step in self.relation_sequence],
        }


@dataclass(frozen=True)
class GenerationPlan:
    components: tuple[PlannedComponent, ...]

    def to_dict(self) -> dict:
        return {"components": [c.to_dict() for c in self.components]}


# ---------------------------------------------------------------------------
# component ordering
# ---------------------------------------------------------------------------

def _cumulated_area(comp: KbGraph, area_graph: AreaGraph) -> float:
    seen = set()
    total = 0.0
    for inst in comp.georeferenced_instances():
        if inst.geo_ref in seen or inst.geo_ref not in area_graph.area_of:
            continue
        seen.add(inst.geo_ref)
        total += polygon_area(area_graph.area_of[inst.geo_ref])
    return total


def _cumulated_barycenter(comp: KbGraph, area_graph: AreaGraph) -> tuple[float, float] | None:
    total = 0.0
    cx = cy = 0.0
    for node in {i.geo_ref for i in comp.georeferenced_instances()}:
        if node not in area_graph.area_of:
            continue
        poly = area_graph.area_of[node]
        a = polygon_area(poly)
        bx, by = barycenter(poly)
        cx, cy, total = cx + bx * a, cy + by * a, total + a
    if total == 0.0:
        return None
    return cx / total, cy / total


def sort_components(components: list[KbGraph], guiding_path: GuidingPath,
                    weights: WeightConfig, area_graph: AreaGraph) -> list[KbGraph]:
    """Project barycenters on the guiding-path direction for the base order,
    then float significantly larger components ahead of smaller ones."""
    geo, rest = [], []
    for comp in components:
        (geo if comp.georeferenced_instances() else rest).append(comp)

    dx, dy = guiding_path.direction
    items = []
    for comp in geo:
        bc = _cumulated_barycenter(comp, area_graph)
        if bc is None:
            rest.append(comp)
            continue
        proj = bc[0] * dx + bc[1] * dy
        anchor = min(comp.instance_ids)
        items.append([proj, anchor, _cumulated_area(comp, area_graph), comp])
    items.sort(key=lambda it: (it[0], it[1]))

    changed = True
    while changed:
        changed = False
        for i in range(len(items) - 1):
            if items[i][2] * weights.size_difference_ratio <= items[i + 1][2]:
                items[i], items[i + 1] = items[i + 1], items[i]
                changed = True
    return [it[3] for it in items] + rest


# ---------------------------------------------------------------------------
# start node
# ---------------------------------------------------------------------------

def select_start_node(component: KbGraph, area_graph: AreaGraph, weights: WeightConfig,
                      parent_title: str = "", parent_area: GeoPolygon | None = None) -> str:
    if not component.instance_ids:
        raise EmptyComponent("cannot pick a start node in an empty component")
    kb = component.kb
    geo_nodes = sorted({i.geo_ref for i in component.georeferenced_instances()})
    top = area_graph.greatest(geo_nodes) if geo_nodes else None
    maxima = set(area_graph.maximal(geo_nodes)) if geo_nodes else set()

    def base_semantic(iid: str) -> float:
        return max((weights.concept_weight(c) for c in kb.instances[iid].concepts), default=0.0)

    neighbor_ids = {iid: _neighbors(component, iid) for iid in component.instance_ids}

    def score(iid: str) -> float:
        inst = kb.instances[iid]
        s = 0.0
        title = name_similarity(inst.name, parent_title) if parent_title else 0.0
        overlap = 0.0
        if parent_area is not None and inst.geo_ref in area_graph.area_of:
            poly = area_graph.area_of[inst.geo_ref]
            inter = intersection_area(poly, parent_area)
            union = polygon_area(poly) + polygon_area(parent_area) - inter
            overlap = inter / union if union > 0 else 0.0
        s += weights.title_match_weight * (title + overlap)
        if inst.geo_ref is not None:
            if top is not None and inst.geo_ref == top:
                s += weights.lattice_weight
            elif top is None and inst.geo_ref in maxima:
                s += weights.lattice_weight * weights.local_maximum_credit
        s += base_semantic(iid)
        s += weights.neighbor_inheritance_factor * sum(
            base_semantic(n) for n in sorted(neighbor_ids[iid]))
        return s

    return min(sorted(component.instance_ids), key=lambda iid: (-score(iid), iid))


def _neighbors(component: KbGraph, iid: str) -> set[str]:
    out: set[str] = set()
    for rid in component.incident_relations(iid):
        ri = component.kb.relation_instances[rid]
        out.update(m for m in ri.members.values() if m != iid)
    return out


# ---------------------------------------------------------------------------
# relation ordering
# ---------------------------------------------------------------------------

def order_relations(component: KbGraph, start: str,
                    weights: WeightConfig) -> tuple[tuple[str, str], ...]:
    """Depth-first from the start node; every relation instance appears
    exactly once, anchored at the node it was emitted from."""
    kb = component.kb
    visited: set[str] = set()
    emitted: set[str] = set()
    sequence: list[tuple[str, str]] = []

    def rel_key(rid: str):
        schema_id = kb.relation_instances[rid].schema
        return (-weights.relation_weight.get(schema_id, 0.0), rid)

    def member_order(rid: str, exclude: str) -> list[str]:
        ri = kb.relation_instances[rid]
        schema = kb.relation_schema(ri.schema)
        if isinstance(schema, SimpleRelationSchema):
            ordered = [ri.members[ROLE_AGENT], ri.members[ROLE_PATIENT]]
        else:
            ordered = [ri.members[mr.role] for mr in schema.member_roles]
        out = []
        for iid in ordered:
            if iid != exclude and iid not in out:
                out.append(iid)
        return out

    def visit(node: str) -> None:
        visited.add(node)
        batch = sorted((r for r in component.incident_relations(node) if r not in emitted),
                       key=rel_key)
        for rid in batch:
            emitted.add(rid)
            sequence.append((rid, node))
        for rid in batch:
            for other in member_order(rid, node):
                if other not in visited and other in component.instance_ids:
                    visit(other)

    if start in component.instance_ids:
        visit(start)
    for rid in sorted(component.relation_ids - emitted, key=rel_key):
        anchor = min(iid for iid in component.kb.relation_instances[rid].members.values())
        sequence.append((rid, anchor))
        emitted.add(rid)
    return tuple(sequence)


def plan_components(tagged: list[tuple[KbGraph, str]], guiding: GuidingPath,
                    weights: WeightConfig, area_graph: AreaGraph,
                    parent_title: str = "",
                    parent_area: GeoPolygon | None = None) -> GenerationPlan:
    by_graph = {id(comp): tag for comp, tag in tagged}
    ordered = sort_components([comp for comp, _ in tagged], guiding, weights, area_graph)
    planned = []
    for comp in ordered:
        if comp.relation_ids:
            start = select_start_node(comp, area_graph, weights, parent_title, parent_area)
            seq = order_relations(comp, start, weights)
        else:
            start, seq = None, ()
        planned.append(PlannedComponent(comp, by_graph[id(comp)], start, seq))
    return GenerationPlan(tuple(planned))

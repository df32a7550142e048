"""Content determination: select the KB subgraph geographically relevant
to a zone, then tag its connected components.

Selection starts from every georeferenced instance whose area is partially
included in the zone and grows monotonically: edges to non-georeferenced
instances are followed transitively, edges to georeferenced instances only
when those also lie in the zone, and reified relations are pulled in with
all their members as soon as one georeferenced member lies in the zone.
"""

from __future__ import annotations

from .errors import NoGeoArea
from .geometry import AreaGraph, GeoPolygon, partial_inclusion
from .kb import KbGraph, KnowledgeBase, SimpleRelationSchema, connected_components
from .weights import TagRule, WeightConfig


def zone_area_nodes(area_graph: AreaGraph, zone: GeoPolygon) -> set[str]:
    """Area nodes partially included in the zone (identity counts)."""
    out = set()
    for node, poly in area_graph.area_of.items():
        if partial_inclusion(poly, zone):
            out.add(node)
    return out


def select_subgraph(kb: KnowledgeBase, area_graph: AreaGraph, zone: GeoPolygon) -> KbGraph:
    """The monotone closure described above; unique regardless of visit order."""
    in_zone = zone_area_nodes(area_graph, zone)

    def inside(instance_id: str) -> bool:
        inst = kb.instances[instance_id]
        return inst.geo_ref is not None and inst.geo_ref in in_zone

    nodes = {iid for iid in kb.instances if inside(iid)}
    relations: set[str] = set()
    queue = sorted(nodes)
    while queue:
        k = queue.pop(0)
        for rid in sorted(kb.relation_instances):
            if rid in relations:
                continue
            ri = kb.relation_instances[rid]
            if k not in ri.members.values():
                continue
            schema = kb.relation_schema(ri.schema)
            if isinstance(schema, SimpleRelationSchema):
                others = [iid for role, iid in sorted(ri.members.items()) if iid != k]
                if not others:  # reflexive edge
                    relations.add(rid)
                    continue
                other = others[0]
                other_inst = kb.instances[other]
                if (not other_inst.georeferenced) or inside(other):
                    relations.add(rid)
                    if other not in nodes:
                        nodes.add(other)
                        queue.append(other)
            else:
                if any(inside(m) for m in ri.members.values()):
                    relations.add(rid)
                    for m in sorted(ri.members.values()):
                        if m not in nodes:
                            nodes.add(m)
                            queue.append(m)
    return KbGraph(kb, frozenset(nodes), frozenset(relations))


def content_determination(leaf_id: str, doc, area_graph: AreaGraph, kb: KnowledgeBase) -> KbGraph:
    """Subgraph for a document leaf, via its effective area node."""
    area_node = doc.effective_area_node(leaf_id)
    if area_node not in area_graph.area_of:
        raise NoGeoArea(f"area node {area_node!r} has no polygon")
    return select_subgraph(kb, area_graph, area_graph.area_of[area_node])


def tag_components(components: list[KbGraph],
                   rules: tuple[TagRule, ...] = (),
                   default: str = "Généralités") -> list[tuple[KbGraph, str]]:
    """First matching rule wins (rules are in priority order)."""
    out = []
    for comp in components:
        names = {comp.kb.instances[i].name for i in comp.instance_ids}
        concepts: set[str] = set()
        for i in comp.instance_ids:
            for c in comp.kb.instances[i].concepts:
                concepts.update(comp.kb.subsumers(c))
        tag = default
        for rule in rules:
            if rule.matches(names, concepts):
                tag = rule.tag
                break
        out.append((comp, tag))
    return out


def components_of(graph: KbGraph) -> list[KbGraph]:
    return connected_components(graph)
